//! Netpbm graymap codec: reads P2 and P5 with maxval up to 255, writes P5.

use thiserror::Error;

use crate::image::Image;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PgmError {
    #[error("bad magic number: expected P2 or P5")]
    BadMagic,
    #[error("malformed header: {0}")]
    BadHeader(String),
    #[error("unsupported maxval {0} (at most 255)")]
    UnsupportedMaxval(u32),
    #[error("image dimension must exceed 1, got {width}x{height}")]
    BadDimension { width: usize, height: usize },
    #[error("truncated pixel data: expected {expected} samples, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("sample {value} exceeds maxval {maxval}")]
    SampleOutOfRange { value: u32, maxval: u32 },
    #[error("malformed sample `{0}`")]
    BadSample(String),
    #[error("image is {width}x{height}, not square (use --pad to zero-pad)")]
    NotSquare { width: usize, height: usize },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Ascii,
    Binary,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    // Skips whitespace and `#` comments running to end of line.
    fn skip_space(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn token(&mut self) -> Option<&'a [u8]> {
        self.skip_space();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && !self.bytes[self.pos].is_ascii_whitespace()
            && self.bytes[self.pos] != b'#'
        {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.bytes[start..self.pos])
    }

    fn header_number(&mut self, what: &str) -> Result<u32, PgmError> {
        let tok = self
            .token()
            .ok_or_else(|| PgmError::BadHeader(format!("missing {what}")))?;
        std::str::from_utf8(tok)
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| {
                PgmError::BadHeader(format!("invalid {what} `{}`", String::from_utf8_lossy(tok)))
            })
    }
}

/// Decodes a graymap. Non-square images are rejected unless `pad` is set, in
/// which case they are zero-padded on the right and bottom.
pub fn read_pgm(bytes: &[u8], pad: bool) -> Result<Image, PgmError> {
    let format = match bytes.get(..2) {
        Some(b"P2") => Format::Ascii,
        Some(b"P5") => Format::Binary,
        _ => return Err(PgmError::BadMagic),
    };
    let mut cur = Cursor { bytes, pos: 2 };
    if !cur
        .bytes
        .get(2)
        .is_some_and(|b| b.is_ascii_whitespace() || *b == b'#')
    {
        return Err(PgmError::BadMagic);
    }
    let width = cur.header_number("width")? as usize;
    let height = cur.header_number("height")? as usize;
    let maxval = cur.header_number("maxval")?;
    if maxval > 255 || maxval == 0 {
        return Err(PgmError::UnsupportedMaxval(maxval));
    }
    if width <= 1 || height <= 1 {
        return Err(PgmError::BadDimension { width, height });
    }
    let expected = width * height;

    let samples = match format {
        Format::Binary => {
            // Exactly one whitespace byte separates maxval from the raster.
            let start = cur.pos + 1;
            let data = bytes.get(start..).unwrap_or(&[]);
            if data.len() < expected {
                return Err(PgmError::Truncated {
                    expected,
                    found: data.len(),
                });
            }
            data[..expected].to_vec()
        }
        Format::Ascii => {
            let mut out = Vec::with_capacity(expected);
            while out.len() < expected {
                let Some(tok) = cur.token() else {
                    return Err(PgmError::Truncated {
                        expected,
                        found: out.len(),
                    });
                };
                let value: u32 = std::str::from_utf8(tok)
                    .ok()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| {
                        PgmError::BadSample(String::from_utf8_lossy(tok).into_owned())
                    })?;
                if value > 255 {
                    return Err(PgmError::SampleOutOfRange { value, maxval });
                }
                out.push(value as u8);
            }
            out
        }
    };
    if let Some(&value) = samples.iter().find(|&&v| u32::from(v) > maxval) {
        return Err(PgmError::SampleOutOfRange {
            value: value.into(),
            maxval,
        });
    }

    if width != height && !pad {
        return Err(PgmError::NotSquare { width, height });
    }
    Ok(Image::pad_to_square(width, height, &samples).expect("dimensions checked above"))
}

/// Encodes `img` as binary P5 with maxval 255.
pub fn write_pgm(img: &Image) -> Vec<u8> {
    encode_p5(img.n(), img.n(), img.pixels())
}

fn encode_p5(width: usize, height: usize, data: &[u8]) -> Vec<u8> {
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend_from_slice(data);
    out
}

/// Renders a real-valued grid (one inner vector per image row) as P5 after
/// min-max scaling to `[0, 255]`. A constant grid renders black.
pub fn write_grid_pgm(rows: &[Vec<f64>]) -> Vec<u8> {
    let height = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let (lo, hi) = rows
        .iter()
        .flatten()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let span = hi - lo;
    let data: Vec<u8> = rows
        .iter()
        .flatten()
        .map(|&v| {
            if span > 0.0 {
                ((v - lo) / span * 255.0).round() as u8
            } else {
                0
            }
        })
        .collect();
    encode_p5(width, height, &data)
}
