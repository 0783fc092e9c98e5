//! Radiance RGBE (`.hdr`) decoder.
//!
//! Decodes shared-exponent RGBE pixels to linear-light floats using the
//! convention `value = mantissa * 2^(exponent - 136)`, i.e. the mantissa is
//! treated as `m/256` against `2^(e-128)`. Supports flat scanlines, the old
//! (1,1,1,count) run-length format, and the new per-component RLE format.

use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use super::IoError;
use crate::image::RgbImage;
use crate::scalar::Scalar;

pub fn load_radiance_hdr<T: Scalar>(path: impl AsRef<Path>) -> Result<RgbImage<T>, IoError> {
    let file = File::open(path)?;
    let mut reader = BufReader::new(file);
    decode(&mut reader)
}

fn decode<T: Scalar, R: BufRead>(reader: &mut R) -> Result<RgbImage<T>, IoError> {
    let signature = read_line(reader)?;
    if signature != "#?RADIANCE" && signature != "#?RGBE" {
        return Err(IoError::MalformedHeader(format!(
            "missing Radiance signature, got {signature:?}"
        )));
    }

    // Header lines until the blank separator. FORMAT is optional but must be
    // RGBE when present.
    loop {
        let line = read_line(reader)?;
        if line.is_empty() {
            break;
        }
        if let Some(fmt) = line.strip_prefix("FORMAT=") {
            if fmt.trim() != "32-bit_rle_rgbe" {
                return Err(IoError::UnsupportedPixelFormat(fmt.trim().to_string()));
            }
        }
    }

    let resolution = read_line(reader)?;
    let (width, height) = parse_resolution(&resolution)?;

    let mut rgbe_rows: Vec<[u8; 4]> = Vec::with_capacity(width * height);
    let mut scanline = vec![[0u8; 4]; width];
    for _ in 0..height {
        read_scanline(reader, &mut scanline)?;
        rgbe_rows.extend_from_slice(&scanline);
    }

    let mut data = Vec::with_capacity(width * height * 3);
    for px in &rgbe_rows {
        let [r, g, b] = rgbe_to_rgb(*px);
        data.push(T::from_f64_lossy(r));
        data.push(T::from_f64_lossy(g));
        data.push(T::from_f64_lossy(b));
    }
    Ok(RgbImage::from_vec(width, height, data)?)
}

/// Shared-exponent decode; a zero exponent denotes black.
pub(crate) fn rgbe_to_rgb(px: [u8; 4]) -> [f64; 3] {
    let [r, g, b, e] = px;
    if e == 0 {
        return [0.0, 0.0, 0.0];
    }
    let scale = (2.0f64).powi(e as i32 - 136);
    [r as f64 * scale, g as f64 * scale, b as f64 * scale]
}

fn parse_resolution(line: &str) -> Result<(usize, usize), IoError> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != 4 || parts[0] != "-Y" || parts[2] != "+X" {
        return Err(IoError::UnsupportedPixelFormat(format!(
            "unsupported resolution orientation {line:?}"
        )));
    }
    let height: usize = parts[1]
        .parse()
        .map_err(|_| IoError::MalformedHeader(format!("bad height in {line:?}")))?;
    let width: usize = parts[3]
        .parse()
        .map_err(|_| IoError::MalformedHeader(format!("bad width in {line:?}")))?;
    if width == 0 || height == 0 {
        return Err(IoError::MalformedHeader("zero image dimension".to_string()));
    }
    Ok((width, height))
}

fn read_scanline<R: Read>(reader: &mut R, out: &mut [[u8; 4]]) -> Result<(), IoError> {
    let width = out.len();
    let mut lead = [0u8; 4];
    read_exact(reader, &mut lead)?;

    let is_new_rle = lead[0] == 2
        && lead[1] == 2
        && ((lead[2] as usize) << 8 | lead[3] as usize) == width
        && (8..=0x7fff).contains(&width);

    if is_new_rle {
        // New format: the four components are run-length encoded separately.
        let mut component = vec![0u8; width];
        for ch in 0..4 {
            let mut pos = 0;
            while pos < width {
                let mut code = [0u8; 1];
                read_exact(reader, &mut code)?;
                let count = code[0] as usize;
                if count > 128 {
                    let run = count - 128;
                    if pos + run > width {
                        return Err(IoError::TruncatedScanline);
                    }
                    let mut value = [0u8; 1];
                    read_exact(reader, &mut value)?;
                    component[pos..pos + run].fill(value[0]);
                    pos += run;
                } else {
                    if count == 0 || pos + count > width {
                        return Err(IoError::TruncatedScanline);
                    }
                    read_exact(reader, &mut component[pos..pos + count])?;
                    pos += count;
                }
            }
            for (px, &v) in out.iter_mut().zip(component.iter()) {
                px[ch] = v;
            }
        }
        return Ok(());
    }

    // Flat / old-format scanline; (1,1,1,count) repeats the previous pixel.
    let mut pos = 0;
    let mut shift = 0u32;
    let mut next = Some(lead);
    while pos < width {
        let px = match next.take() {
            Some(px) => px,
            None => {
                let mut buf = [0u8; 4];
                read_exact(reader, &mut buf)?;
                buf
            }
        };
        if px[0] == 1 && px[1] == 1 && px[2] == 1 {
            if pos == 0 {
                return Err(IoError::MalformedHeader("repeat run with no prior pixel".into()));
            }
            let run = (px[3] as usize) << shift;
            if pos + run > width {
                return Err(IoError::TruncatedScanline);
            }
            let prev = out[pos - 1];
            out[pos..pos + run].fill(prev);
            pos += run;
            shift += 8;
        } else {
            out[pos] = px;
            pos += 1;
            shift = 0;
        }
    }
    Ok(())
}

fn read_exact<R: Read>(reader: &mut R, buf: &mut [u8]) -> Result<(), IoError> {
    reader.read_exact(buf).map_err(|e| {
        if e.kind() == std::io::ErrorKind::UnexpectedEof {
            IoError::TruncatedScanline
        } else {
            IoError::Io(e)
        }
    })
}

fn read_line<R: BufRead>(reader: &mut R) -> Result<String, IoError> {
    let mut buf = Vec::new();
    reader.read_until(b'\n', &mut buf)?;
    if buf.is_empty() {
        return Err(IoError::MalformedHeader("unexpected end of header".to_string()));
    }
    if buf.last() == Some(&b'\n') {
        buf.pop();
    }
    String::from_utf8(buf)
        .map_err(|_| IoError::MalformedHeader("non-UTF-8 header line".to_string()))
}
