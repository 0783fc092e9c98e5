//! File I/O: Radiance RGBE decoding, PFM read/write, and label-map loading.

mod labels;
mod pfm;
mod radiance;

pub use labels::{load_binary_mask, load_label_map, write_partition_pgm};
pub use pfm::{load_pfm, write_pfm_gray, PfmImage};
pub use radiance::load_radiance_hdr;

use thiserror::Error;

use crate::image::ImageError;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("unsupported pixel format: {0}")]
    UnsupportedPixelFormat(String),
    #[error("truncated scanline data")]
    TruncatedScanline,
    #[error("payload size does not match header dimensions")]
    SizeMismatch,
    #[error("label map has no foreground pixels")]
    NoForegroundPixels,
    #[error("dimensions {got_width}x{got_height} do not match expected {want_width}x{want_height}")]
    DimensionMismatch {
        want_width: usize,
        want_height: usize,
        got_width: usize,
        got_height: usize,
    },
    #[error(transparent)]
    Image(#[from] ImageError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("png decode failed: {0}")]
    Png(String),
}
