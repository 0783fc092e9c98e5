//! Pixel containers: grayscale and RGB float images, partition label maps,
//! and the basic conversions between them.

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ImageError {
    #[error("data length {len} does not match {width}x{height}")]
    SizeMismatch { width: usize, height: usize, len: usize },
    #[error("image dimensions must be at least 1x1")]
    EmptyImage,
    #[error("image contains NaN values")]
    NanValues,
}

/// Single-channel float image, row-major.
///
/// Linear HDR content is non-negative; transformed intermediates (log
/// encodings, detector responses) may go negative.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage<T> {
    width: usize,
    height: usize,
    data: Vec<T>,
}

impl<T: Scalar> GrayImage<T> {
    pub fn from_vec(width: usize, height: usize, data: Vec<T>) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::EmptyImage);
        }
        if data.len() != width * height {
            return Err(ImageError::SizeMismatch { width, height, len: data.len() });
        }
        if data.iter().any(|v| v.is_nan()) {
            return Err(ImageError::NanValues);
        }
        Ok(Self { width, height, data })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(width * height);
        for row in 0..height {
            for col in 0..width {
                data.push(f(row, col));
            }
        }
        Self { width, height, data }
    }

    pub fn zeros(width: usize, height: usize) -> Self {
        Self { width, height, data: vec![T::zero(); width * height] }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> T {
        debug_assert!(row < self.height && col < self.width);
        self.data[row * self.width + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, v: T) {
        debug_assert!(row < self.height && col < self.width);
        self.data[row * self.width + col] = v;
    }

    /// Read with clamp-to-edge semantics for possibly out-of-range signed coordinates.
    #[inline]
    pub fn get_clamped(&self, row: isize, col: isize) -> T {
        let r = row.clamp(0, self.height as isize - 1) as usize;
        let c = col.clamp(0, self.width as isize - 1) as usize;
        self.data[r * self.width + c]
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn min_max(&self) -> (T, T) {
        let mut lo = self.data[0];
        let mut hi = self.data[0];
        for &v in &self.data {
            if v < lo {
                lo = v;
            }
            if v > hi {
                hi = v;
            }
        }
        (lo, hi)
    }

    /// Downsample by keeping every other pixel, starting at (0, 0).
    pub fn half_size(&self) -> Self {
        let w = (self.width + 1) / 2;
        let h = (self.height + 1) / 2;
        Self::from_fn(w, h, |r, c| self.get(r * 2, c * 2))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.height, self.width, |r, c| self.get(c, r))
    }

    pub fn flip_horizontal(&self) -> Self {
        Self::from_fn(self.width, self.height, |r, c| self.get(r, self.width - 1 - c))
    }

    pub fn flip_vertical(&self) -> Self {
        Self::from_fn(self.width, self.height, |r, c| self.get(self.height - 1 - r, c))
    }
}

/// Three-channel float image, row-major interleaved RGB.
#[derive(Debug, Clone, PartialEq)]
pub struct RgbImage<T> {
    width: usize,
    height: usize,
    data: Vec<T>,
}

impl<T: Scalar> RgbImage<T> {
    pub fn from_vec(width: usize, height: usize, data: Vec<T>) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::EmptyImage);
        }
        if data.len() != width * height * 3 {
            return Err(ImageError::SizeMismatch { width, height, len: data.len() });
        }
        if data.iter().any(|v| v.is_nan()) {
            return Err(ImageError::NanValues);
        }
        Ok(Self { width, height, data })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    #[inline]
    pub fn pixel(&self, row: usize, col: usize) -> [T; 3] {
        let i = (row * self.width + col) * 3;
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }
}

/// Rec. 709 luma of a linear-light RGB image.
pub fn to_grayscale<T: Scalar>(img: &RgbImage<T>) -> GrayImage<T> {
    let wr = T::from_f64_lossy(0.2126);
    let wg = T::from_f64_lossy(0.7152);
    let wb = T::from_f64_lossy(0.0722);
    GrayImage::from_fn(img.width(), img.height(), |r, c| {
        let [pr, pg, pb] = img.pixel(r, c);
        wr * pr + wg * pg + wb * pb
    })
}

/// Natural-log encoding `ln(v + eps)`; strictly monotone for `eps > 0`.
pub fn log_encode<T: Scalar>(img: &GrayImage<T>, eps: T) -> GrayImage<T> {
    img.map(|v| (v + eps).ln())
}

/// Min-max normalization onto [0, 65535], rounded half away from zero.
/// A constant image maps to all zeros.
pub fn normalize_u16<T: Scalar>(img: &GrayImage<T>) -> GrayImage<T> {
    let (lo, hi) = img.min_max();
    let range = hi - lo;
    if range <= T::zero() {
        return GrayImage::zeros(img.width(), img.height());
    }
    let top = T::from_f64_lossy(65535.0);
    img.map(|v| ((v - lo) / range * top).round())
}

/// Per-pixel label: background, or one of `n` numbered areas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    Background,
    Area(usize),
}

/// Partition of an image into background plus areas 1..=n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionMap {
    width: usize,
    height: usize,
    /// 0 = background, k = area k.
    labels: Vec<u16>,
    num_areas: usize,
}

impl PartitionMap {
    pub fn from_labels(width: usize, height: usize, labels: Vec<u16>) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::EmptyImage);
        }
        if labels.len() != width * height {
            return Err(ImageError::SizeMismatch { width, height, len: labels.len() });
        }
        let num_areas = labels.iter().copied().max().unwrap_or(0) as usize;
        Ok(Self { width, height, labels, num_areas })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn num_areas(&self) -> usize {
        self.num_areas
    }

    pub fn raw_labels(&self) -> &[u16] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, row: usize, col: usize) -> Label {
        match self.labels[row * self.width + col] {
            0 => Label::Background,
            k => Label::Area(k as usize),
        }
    }

    pub fn foreground_count(&self) -> usize {
        self.labels.iter().filter(|&&l| l != 0).count()
    }

    pub fn area_pixel_count(&self, area: usize) -> usize {
        self.labels.iter().filter(|&&l| l as usize == area).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_vec_rejects_bad_length() {
        let err = GrayImage::<f64>::from_vec(2, 2, vec![0.0; 3]).unwrap_err();
        assert_eq!(err, ImageError::SizeMismatch { width: 2, height: 2, len: 3 });
    }

    #[test]
    fn from_vec_rejects_nan() {
        let err = GrayImage::<f64>::from_vec(2, 1, vec![0.0, f64::NAN]).unwrap_err();
        assert_eq!(err, ImageError::NanValues);
    }

    #[test]
    fn grayscale_weights() {
        let img = RgbImage::from_vec(2, 1, vec![1.0, 1.0, 1.0, 1.0, 0.0, 0.0]).unwrap();
        let g = to_grayscale(&img);
        assert!((g.get(0, 0) - 1.0).abs() < 1e-12);
        assert!((g.get(0, 1) - 0.2126).abs() < 1e-12);
    }

    #[test]
    fn log_encode_fixed_points() {
        let img = GrayImage::from_vec(2, 1, vec![0.0, std::f64::consts::E - 1.0]).unwrap();
        let out = log_encode(&img, 1.0);
        assert!(out.get(0, 0).abs() < 1e-12);
        assert!((out.get(0, 1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn normalize_u16_endpoints_and_midpoint() {
        let img = GrayImage::from_vec(3, 1, vec![2.0, 3.0, 4.0]).unwrap();
        let out = normalize_u16(&img);
        assert_eq!(out.data(), &[0.0, 32768.0, 65535.0]);
    }

    #[test]
    fn normalize_u16_constant_maps_to_zero() {
        let img = GrayImage::from_vec(2, 2, vec![7.3; 4]).unwrap();
        let out = normalize_u16(&img);
        assert!(out.data().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn partition_map_counts() {
        let pm = PartitionMap::from_labels(2, 2, vec![0, 1, 2, 1]).unwrap();
        assert_eq!(pm.num_areas(), 2);
        assert_eq!(pm.foreground_count(), 3);
        assert_eq!(pm.area_pixel_count(1), 2);
        assert_eq!(pm.label(0, 0), Label::Background);
        assert_eq!(pm.label(1, 0), Label::Area(2));
    }
}
