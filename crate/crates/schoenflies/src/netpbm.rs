//! Minimal netpbm I/O: PBM (P4) for cell sets, PGM (P5) for labelings, and
//! PPM (P6) for colored renders. Image row 0 is the top of the picture, so
//! grid row `height - 1` (largest `y`) is written first.

use std::io::{BufRead, Read, Write};

use crate::raster::{CellSet, ComponentLabeling, Grid, Raster, BACKGROUND};
use crate::{Error, Result};

/// Write a cell set as binary PBM (P4). Marked cells become black pixels.
pub fn write_pbm<W: Write>(w: &mut W, raster: &Raster) -> Result<()> {
    let g = &raster.grid;
    writeln!(w, "P4")?;
    writeln!(w, "# pitch {} origin {} {}", g.h, g.origin.re, g.origin.im)?;
    writeln!(w, "{} {}", g.width, g.height)?;
    let row_bytes = (g.width as usize).div_ceil(8);
    let mut row = vec![0u8; row_bytes];
    for j in (0..g.height).rev() {
        row.fill(0);
        for i in 0..g.width {
            if raster.cells.contains(g.index(i, j)) {
                row[i as usize / 8] |= 0x80 >> (i % 8);
            }
        }
        w.write_all(&row)?;
    }
    Ok(())
}

/// Read a binary PBM (P4) back into a raster. The pitch and origin are
/// recovered from the comment written by [`write_pbm`]; absent that, the
/// grid defaults to unit pitch with origin 0.
pub fn read_pbm<R: BufRead>(r: &mut R) -> Result<Raster> {
    let magic = read_token(r)?;
    if magic != "P4" {
        return Err(Error::Format(format!("expected P4, got {magic:?}")));
    }
    let mut h = 1.0f64;
    let mut origin = num_complex::Complex64::new(0.0, 0.0);
    let mut comments: Vec<String> = Vec::new();
    let width: u32 = read_value(r, &mut comments)?;
    let height: u32 = read_value(r, &mut comments)?;
    for c in &comments {
        let parts: Vec<&str> = c.split_whitespace().collect();
        if parts.len() == 6 && parts[0] == "pitch" && parts[2] == "origin" {
            if let (Ok(p), Ok(or), Ok(oi)) =
                (parts[1].parse(), parts[3].parse(), parts[5].parse())
            {
                h = p;
                origin = num_complex::Complex64::new(or, oi);
            }
        }
    }
    let grid = Grid {
        origin,
        h,
        width,
        height,
    };
    let mut raster = Raster::empty(grid);
    let row_bytes = (width as usize).div_ceil(8);
    let mut row = vec![0u8; row_bytes];
    for j in (0..height).rev() {
        r.read_exact(&mut row)?;
        for i in 0..width {
            if row[i as usize / 8] & (0x80 >> (i % 8)) != 0 {
                raster.mark(i, j);
            }
        }
    }
    Ok(raster)
}

/// Write a component labeling as binary PGM (P5): background is 0, label `k`
/// maps to `1 + (k mod 255)`.
pub fn write_pgm_labels<W: Write>(w: &mut W, grid: &Grid, lab: &ComponentLabeling) -> Result<()> {
    writeln!(w, "P5")?;
    writeln!(w, "{} {}", grid.width, grid.height)?;
    writeln!(w, "255")?;
    let mut row = vec![0u8; grid.width as usize];
    for j in (0..grid.height).rev() {
        for i in 0..grid.width {
            let l = lab.labels[grid.index(i, j)];
            row[i as usize] = if l == BACKGROUND { 0 } else { 1 + (l % 255) as u8 };
        }
        w.write_all(&row)?;
    }
    Ok(())
}

/// Deterministic label color via a splitmix64 hash, avoiding near-black.
pub fn label_color(label: u32) -> [u8; 3] {
    let mut x = label as u64 ^ 0x9e37_79b9_7f4a_7c15;
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^= x >> 31;
    let mut c = [
        64 + (x & 0xbf) as u8,
        64 + ((x >> 8) & 0xbf) as u8,
        64 + ((x >> 16) & 0xbf) as u8,
    ];
    // spread hue a bit: rotate channels by label mod 3
    c.rotate_left((label % 3) as usize);
    c
}

/// Write a colored class picture as binary PPM (P6): background black, each
/// class in its hash color.
pub fn write_ppm_classes<W: Write>(w: &mut W, grid: &Grid, class_of_cell: &[u32]) -> Result<()> {
    assert_eq!(class_of_cell.len(), grid.len());
    writeln!(w, "P6")?;
    writeln!(w, "{} {}", grid.width, grid.height)?;
    writeln!(w, "255")?;
    let mut row = vec![0u8; grid.width as usize * 3];
    for j in (0..grid.height).rev() {
        for i in 0..grid.width {
            let l = class_of_cell[grid.index(i, j)];
            let px = if l == BACKGROUND {
                [0, 0, 0]
            } else {
                label_color(l)
            };
            row[i as usize * 3..i as usize * 3 + 3].copy_from_slice(&px);
        }
        w.write_all(&row)?;
    }
    Ok(())
}

fn read_token<R: BufRead>(r: &mut R) -> Result<String> {
    let mut tok = String::new();
    let mut byte = [0u8; 1];
    loop {
        if r.read(&mut byte)? == 0 {
            break;
        }
        let c = byte[0] as char;
        if c.is_whitespace() {
            if tok.is_empty() {
                continue;
            }
            break;
        }
        tok.push(c);
    }
    if tok.is_empty() {
        return Err(Error::Format("unexpected end of netpbm header".into()));
    }
    Ok(tok)
}

/// Read the next integer header field, collecting any comment lines seen.
fn read_value<R: BufRead, T: std::str::FromStr>(
    r: &mut R,
    comments: &mut Vec<String>,
) -> Result<T> {
    loop {
        let tok = read_token(r)?;
        if tok.starts_with('#') {
            let mut rest = String::new();
            r.read_line(&mut rest)?;
            comments.push(format!("{} {}", &tok[1..], rest.trim()).trim().to_string());
            continue;
        }
        return tok
            .parse()
            .map_err(|_| Error::Format(format!("bad netpbm header field {tok:?}")));
    }
}
