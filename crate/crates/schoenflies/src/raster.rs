//! Raster substrate: grids, bitset cell sets, component labeling, exact
//! distance transforms, Hausdorff distances, and diameters.
//!
//! A [`Grid`] is an axis-aligned square lattice in the plane; cell `(i, j)`
//! has center `origin + (i*h, j*h)` with `+y` pointing up and linear index
//! `j * width + i` (row-major). A [`CellSet`] is a bitset over those indices;
//! a [`Raster`] bundles the two and carries the drawing primitives used by
//! the generators.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Square-lattice view of a rectangle of the plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    /// Center of cell (0, 0).
    pub origin: Complex64,
    /// Cell side length (grid pitch).
    pub h: f64,
    pub width: u32,
    pub height: u32,
}

impl Grid {
    /// Grid covering the rectangle `[lo, hi]` with pitch `h` plus `margin`
    /// extra cells on every side. Points at `lo + (k*h, l*h)` land exactly on
    /// cell centers.
    pub fn cover(lo: Complex64, hi: Complex64, h: f64, margin: u32) -> Result<Grid> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::InvalidScale(format!("grid pitch h = {h}")));
        }
        if hi.re < lo.re || hi.im < lo.im {
            return Err(Error::BadParameter(format!(
                "cover rectangle has negative extent: lo = {lo}, hi = {hi}"
            )));
        }
        let spanx = ((hi.re - lo.re) / h).ceil() as u32;
        let spany = ((hi.im - lo.im) / h).ceil() as u32;
        Ok(Grid {
            origin: Complex64::new(lo.re - margin as f64 * h, lo.im - margin as f64 * h),
            h,
            width: spanx + 2 * margin + 1,
            height: spany + 2 * margin + 1,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.width as usize * self.height as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn index(&self, i: u32, j: u32) -> usize {
        debug_assert!(i < self.width && j < self.height);
        j as usize * self.width as usize + i as usize
    }

    #[inline]
    pub fn coords(&self, idx: usize) -> (u32, u32) {
        ((idx % self.width as usize) as u32, (idx / self.width as usize) as u32)
    }

    #[inline]
    pub fn center(&self, i: u32, j: u32) -> Complex64 {
        Complex64::new(
            self.origin.re + i as f64 * self.h,
            self.origin.im + j as f64 * self.h,
        )
    }

    #[inline]
    pub fn center_of(&self, idx: usize) -> Complex64 {
        let (i, j) = self.coords(idx);
        self.center(i, j)
    }

    /// Indices of the cell whose center is nearest to `z` (may be out of
    /// bounds; see [`Grid::locate`]).
    #[inline]
    pub fn locate_unclamped(&self, z: Complex64) -> (i64, i64) {
        (
            ((z.re - self.origin.re) / self.h).round() as i64,
            ((z.im - self.origin.im) / self.h).round() as i64,
        )
    }

    /// Nearest cell to `z` if it lies on the grid.
    #[inline]
    pub fn locate(&self, z: Complex64) -> Option<(u32, u32)> {
        let (i, j) = self.locate_unclamped(z);
        if i >= 0 && j >= 0 && (i as u32) < self.width && (j as u32) < self.height {
            Some((i as u32, j as u32))
        } else {
            None
        }
    }
}

/// Bitset over the cells of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSet {
    words: Vec<u64>,
    bits: usize,
}

impl CellSet {
    pub fn new(bits: usize) -> CellSet {
        CellSet {
            words: vec![0u64; bits.div_ceil(64)],
            bits,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    #[inline]
    pub fn insert(&mut self, idx: usize) {
        debug_assert!(idx < self.bits);
        self.words[idx / 64] |= 1u64 << (idx % 64);
    }

    #[inline]
    pub fn remove(&mut self, idx: usize) {
        debug_assert!(idx < self.bits);
        self.words[idx / 64] &= !(1u64 << (idx % 64));
    }

    #[inline]
    pub fn contains(&self, idx: usize) -> bool {
        debug_assert!(idx < self.bits);
        self.words[idx / 64] >> (idx % 64) & 1 != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Remove every cell present in `other`. Both sets must live on the same
    /// grid (same bit length).
    pub fn subtract(&mut self, other: &CellSet) {
        assert_eq!(self.bits, other.bits, "cell sets live on different grids");
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
    }

    pub fn union_with(&mut self, other: &CellSet) {
        assert_eq!(self.bits, other.bits, "cell sets live on different grids");
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn intersect_with(&mut self, other: &CellSet) {
        assert_eq!(self.bits, other.bits, "cell sets live on different grids");
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
    }

    /// Iterate set bits in increasing index order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

/// A grid together with the set of marked cells: the finite-scale picture of
/// a planar compactum.
#[derive(Debug, Clone)]
pub struct Raster {
    pub grid: Grid,
    pub cells: CellSet,
}

impl Raster {
    pub fn empty(grid: Grid) -> Raster {
        let cells = CellSet::new(grid.len());
        Raster { grid, cells }
    }

    #[inline]
    pub fn mark(&mut self, i: u32, j: u32) {
        let idx = self.grid.index(i, j);
        self.cells.insert(idx);
    }

    #[inline]
    pub fn mark_near(&mut self, z: Complex64) {
        if let Some((i, j)) = self.grid.locate(z) {
            self.mark(i, j);
        }
    }

    /// Mark every cell whose center lies in the closed rectangle `[lo, hi]`
    /// (inflated by a relative epsilon so exactly aligned boundaries are
    /// included). A degenerate rectangle marks a one-cell-wide row or column.
    pub fn fill_rect(&mut self, lo: Complex64, hi: Complex64) {
        let eps = 1e-6 * self.grid.h;
        let i0 = ((lo.re - eps - self.grid.origin.re) / self.grid.h).ceil().max(0.0) as i64;
        let j0 = ((lo.im - eps - self.grid.origin.im) / self.grid.h).ceil().max(0.0) as i64;
        let i1 = ((hi.re + eps - self.grid.origin.re) / self.grid.h).floor() as i64;
        let j1 = ((hi.im + eps - self.grid.origin.im) / self.grid.h).floor() as i64;
        for j in j0..=j1.min(self.grid.height as i64 - 1) {
            for i in i0..=i1.min(self.grid.width as i64 - 1) {
                self.mark(i as u32, j as u32);
            }
        }
    }

    /// Mark cells whose center lies strictly inside the disk `|z - c| < r`.
    pub fn fill_disk(&mut self, c: Complex64, r: f64) -> Result<()> {
        if !(r > 0.0) {
            return Err(Error::InvalidScale(format!("disk radius r = {r}")));
        }
        let g = &self.grid;
        let (ic, jc) = g.locate_unclamped(c);
        let reach = (r / g.h).ceil() as i64 + 1;
        for j in (jc - reach).max(0)..=(jc + reach).min(g.height as i64 - 1) {
            for i in (ic - reach).max(0)..=(ic + reach).min(g.width as i64 - 1) {
                if (g.center(i as u32, j as u32) - c).norm_sqr() < r * r {
                    self.mark(i as u32, j as u32);
                }
            }
        }
        Ok(())
    }

    /// Mark cells whose center lies in the closed annulus `r0 <= |z-c| <= r1`.
    pub fn fill_annulus(&mut self, c: Complex64, r0: f64, r1: f64) -> Result<()> {
        if !(0.0 <= r0 && r0 < r1) {
            return Err(Error::BadParameter(format!("annulus radii {r0}, {r1}")));
        }
        let g = &self.grid;
        let (ic, jc) = g.locate_unclamped(c);
        let reach = (r1 / g.h).ceil() as i64 + 1;
        for j in (jc - reach).max(0)..=(jc + reach).min(g.height as i64 - 1) {
            for i in (ic - reach).max(0)..=(ic + reach).min(g.width as i64 - 1) {
                let d2 = (g.center(i as u32, j as u32) - c).norm_sqr();
                if d2 >= r0 * r0 && d2 <= r1 * r1 {
                    self.mark(i as u32, j as u32);
                }
            }
        }
        Ok(())
    }

    /// Mark the circle `|z - c| = r` as the band of cells whose center is
    /// within one pitch of it. Fails when the circle is too small to resolve.
    pub fn draw_circle(&mut self, c: Complex64, r: f64) -> Result<()> {
        let h = self.grid.h;
        if r <= 2.0 * h {
            return Err(Error::CircleUnresolvable { r, limit: 2.0 * h });
        }
        self.draw_arc(c, r, 0.0, 2.0 * std::f64::consts::PI)
    }

    /// Mark the arc of `|z - c| = r` with angle in `[t0, t1]` (radians,
    /// `t1 - t0 <= 2*pi`) as a one-pitch band.
    pub fn draw_arc(&mut self, c: Complex64, r: f64, t0: f64, t1: f64) -> Result<()> {
        let h = self.grid.h;
        if r <= 2.0 * h {
            return Err(Error::CircleUnresolvable { r, limit: 2.0 * h });
        }
        let g = &self.grid;
        let full = (t1 - t0) >= 2.0 * std::f64::consts::PI - 1e-12;
        let (ic, jc) = g.locate_unclamped(c);
        let reach = ((r + h) / h).ceil() as i64 + 1;
        for j in (jc - reach).max(0)..=(jc + reach).min(g.height as i64 - 1) {
            for i in (ic - reach).max(0)..=(ic + reach).min(g.width as i64 - 1) {
                let z = g.center(i as u32, j as u32) - c;
                let d = z.norm();
                if (d - r).abs() <= h {
                    if full {
                        self.mark(i as u32, j as u32);
                    } else {
                        let mut t = z.arg();
                        // shift into [t0, t0 + 2*pi)
                        while t < t0 - 1e-12 {
                            t += 2.0 * std::f64::consts::PI;
                        }
                        if t <= t1 + 1e-12 {
                            self.mark(i as u32, j as u32);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Mark the digital segment from `a` to `b`: march along the segment in
    /// quarter-pitch steps and mark the nearest cell to each step point. The
    /// result is one cell thick and 8-connected. With `half_width > 0` a
    /// solid band of that half-width is marked instead.
    pub fn draw_segment(&mut self, a: Complex64, b: Complex64, half_width: f64) {
        let g = &self.grid;
        let len = (b - a).norm();
        let steps = (len / (0.25 * g.h)).ceil().max(1.0) as usize;
        if half_width <= 0.0 {
            for s in 0..=steps {
                let t = s as f64 / steps as f64;
                self.mark_near(a + (b - a) * t);
            }
            return;
        }
        // solid band: bounding box scan against point-segment distance
        let lo = Complex64::new(a.re.min(b.re) - half_width, a.im.min(b.im) - half_width);
        let hi = Complex64::new(a.re.max(b.re) + half_width, a.im.max(b.im) + half_width);
        let (i0, j0) = g.locate_unclamped(lo);
        let (i1, j1) = g.locate_unclamped(hi);
        for j in j0.max(0)..=j1.min(g.height as i64 - 1) {
            for i in i0.max(0)..=i1.min(g.width as i64 - 1) {
                let z = g.center(i as u32, j as u32);
                if segment_distance(z, a, b) <= half_width {
                    self.mark(i as u32, j as u32);
                }
            }
        }
    }
}

/// Euclidean distance from `z` to the segment `[a, b]`.
pub fn segment_distance(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let den = ab.norm_sqr();
    if den == 0.0 {
        return (z - a).norm();
    }
    let t = ((z - a).re * ab.re + (z - a).im * ab.im) / den;
    let t = t.clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}

/// Cell adjacency used by component labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Connectivity {
    Four,
    Eight,
}

impl Connectivity {
    #[inline]
    pub fn offsets(self) -> &'static [(i64, i64)] {
        match self {
            Connectivity::Four => &[(1, 0), (-1, 0), (0, 1), (0, -1)],
            Connectivity::Eight => &[
                (1, 0),
                (-1, 0),
                (0, 1),
                (0, -1),
                (1, 1),
                (1, -1),
                (-1, 1),
                (-1, -1),
            ],
        }
    }
}

/// Result of connected-component labeling over a cell set.
#[derive(Debug, Clone)]
pub struct ComponentLabeling {
    /// One entry per grid cell; `u32::MAX` marks background.
    pub labels: Vec<u32>,
    pub count: u32,
}

pub const BACKGROUND: u32 = u32::MAX;

/// Label connected components of `cells` on a `width x height` grid.
/// Components are numbered 0.. in order of their first cell in row-major
/// scan order, so labeling is deterministic.
pub fn label_components(
    cells: &CellSet,
    width: u32,
    height: u32,
    conn: Connectivity,
) -> ComponentLabeling {
    assert_eq!(cells.len(), width as usize * height as usize);
    let mut labels = vec![BACKGROUND; cells.len()];
    let mut count = 0u32;
    let mut queue = std::collections::VecDeque::new();
    for start in cells.ones() {
        if labels[start] != BACKGROUND {
            continue;
        }
        let label = count;
        count += 1;
        labels[start] = label;
        queue.push_back(start);
        while let Some(idx) = queue.pop_front() {
            let i = (idx % width as usize) as i64;
            let j = (idx / width as usize) as i64;
            for &(di, dj) in conn.offsets() {
                let (ni, nj) = (i + di, j + dj);
                if ni < 0 || nj < 0 || ni >= width as i64 || nj >= height as i64 {
                    continue;
                }
                let nidx = nj as usize * width as usize + ni as usize;
                if cells.contains(nidx) && labels[nidx] == BACKGROUND {
                    labels[nidx] = label;
                    queue.push_back(nidx);
                }
            }
        }
    }
    ComponentLabeling { labels, count }
}

/// Exact squared Euclidean distance transform (Felzenszwalb-Huttenlocher).
/// Returns, for every grid cell, the squared distance in cell units to the
/// nearest marked cell; `f64::INFINITY` everywhere when the set is empty.
pub fn squared_edt(cells: &CellSet, width: u32, height: u32) -> Vec<f64> {
    assert_eq!(cells.len(), width as usize * height as usize);
    let (w, h) = (width as usize, height as usize);
    let mut f = vec![f64::INFINITY; w * h];
    for idx in cells.ones() {
        f[idx] = 0.0;
    }
    let mut row = vec![0.0f64; w.max(h)];
    let mut out = vec![0.0f64; w.max(h)];
    // pass 1: along rows
    for j in 0..h {
        row[..w].copy_from_slice(&f[j * w..(j + 1) * w]);
        dt1d(&row[..w], &mut out[..w]);
        f[j * w..(j + 1) * w].copy_from_slice(&out[..w]);
    }
    // pass 2: along columns
    for i in 0..w {
        for j in 0..h {
            row[j] = f[j * w + i];
        }
        dt1d(&row[..h], &mut out[..h]);
        for j in 0..h {
            f[j * w + i] = out[j];
        }
    }
    f
}

/// One-dimensional squared distance transform under the parabola envelope.
fn dt1d(f: &[f64], out: &mut [f64]) {
    let n = f.len();
    let mut v = vec![0usize; n]; // locations of parabolas in the envelope
    let mut z = vec![0.0f64; n + 1]; // boundaries between parabolas
    let mut k = 0usize;
    v[0] = 0;
    z[0] = f64::NEG_INFINITY;
    z[1] = f64::INFINITY;
    for q in 1..n {
        if f[q] == f64::INFINITY {
            continue;
        }
        loop {
            let p = v[k];
            let s = if f[p] == f64::INFINITY {
                // parabola at p is absent; q takes over from -inf
                f64::NEG_INFINITY
            } else {
                ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64)) / (2.0 * (q as f64 - p as f64))
            };
            if s <= z[k] {
                if k == 0 {
                    v[0] = q;
                    z[0] = f64::NEG_INFINITY;
                    z[1] = f64::INFINITY;
                    break;
                }
                k -= 1;
            } else {
                k += 1;
                v[k] = q;
                z[k] = s;
                z[k + 1] = f64::INFINITY;
                break;
            }
        }
    }
    let mut k = 0usize;
    for q in 0..n {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let p = v[k];
        out[q] = if f[p] == f64::INFINITY {
            f64::INFINITY
        } else {
            let d = q as f64 - p as f64;
            d * d + f[p]
        };
    }
}

/// Symmetric Hausdorff distance between two cell sets on a common grid,
/// exact for cell centers. Errors when either set is empty.
pub fn hausdorff_cells(a: &CellSet, b: &CellSet, grid: &Grid) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet("hausdorff distance of empty cell set".into()));
    }
    let edt_b = squared_edt(b, grid.width, grid.height);
    let edt_a = squared_edt(a, grid.width, grid.height);
    let mut worst: f64 = 0.0;
    for idx in a.ones() {
        worst = worst.max(edt_b[idx]);
    }
    for idx in b.ones() {
        worst = worst.max(edt_a[idx]);
    }
    Ok(worst.sqrt() * grid.h)
}

/// Symmetric Hausdorff distance between two finite point sets (brute force).
pub fn hausdorff_points(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet("hausdorff distance of empty point set".into()));
    }
    let directed = |xs: &[Complex64], ys: &[Complex64]| -> f64 {
        xs.iter()
            .map(|x| {
                ys.iter()
                    .map(|y| (x - y).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    Ok(directed(a, b).max(directed(b, a)))
}

/// Convex hull of integer lattice points (Andrew's monotone chain).
/// Input order is irrelevant; duplicates are fine. Returns hull vertices in
/// counterclockwise order (may be fewer than 3 for degenerate input).
pub fn convex_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts: Vec<(i64, i64)> = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| -> i64 {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev() {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Squared diameter of an integer point set via convex hull plus rotating
/// calipers. Returns 0 for empty or singleton input.
pub fn diameter_sq(points: &[(i64, i64)]) -> i64 {
    let hull = convex_hull(points);
    let n = hull.len();
    if n <= 1 {
        return 0;
    }
    let d2 = |a: (i64, i64), b: (i64, i64)| -> i64 {
        let (dx, dy) = (a.0 - b.0, a.1 - b.1);
        dx * dx + dy * dy
    };
    if n == 2 {
        return d2(hull[0], hull[1]);
    }
    let area2 = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| -> i64 {
        ((a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)).abs()
    };
    let mut best = 0i64;
    let mut k = 1usize;
    for i in 0..n {
        let next = (i + 1) % n;
        // advance the antipodal point while the triangle area keeps growing
        while area2(hull[i], hull[next], hull[(k + 1) % n]) > area2(hull[i], hull[next], hull[k]) {
            k = (k + 1) % n;
        }
        best = best.max(d2(hull[i], hull[k])).max(d2(hull[next], hull[k]));
    }
    best
}

/// Diameter (in world units) of the marked cells of a raster subset given by
/// an iterator of linear indices.
pub fn diameter_of_cells<I: IntoIterator<Item = usize>>(grid: &Grid, cells: I) -> f64 {
    let pts: Vec<(i64, i64)> = cells
        .into_iter()
        .map(|idx| {
            let (i, j) = grid.coords(idx);
            (i as i64, j as i64)
        })
        .collect();
    (diameter_sq(&pts) as f64).sqrt() * grid.h
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Independent reference flood fill used to check the BFS labeler.
    fn oracle_components(mask: &[bool], width: usize, height: usize, conn: Connectivity) -> Vec<i32> {
        let mut labels = vec![-1i32; mask.len()];
        let mut next = 0i32;
        for start in 0..mask.len() {
            if !mask[start] || labels[start] >= 0 {
                continue;
            }
            let mut stack = vec![start];
            labels[start] = next;
            while let Some(idx) = stack.pop() {
                let (i, j) = ((idx % width) as i64, (idx / width) as i64);
                for &(di, dj) in conn.offsets() {
                    let (ni, nj) = (i + di, j + dj);
                    if ni < 0 || nj < 0 || ni >= width as i64 || nj >= height as i64 {
                        continue;
                    }
                    let nidx = nj as usize * width + ni as usize;
                    if mask[nidx] && labels[nidx] < 0 {
                        labels[nidx] = next;
                        stack.push(nidx);
                    }
                }
            }
            next += 1;
        }
        labels
    }

    fn random_mask(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Vec<bool> {
        (0..n).map(|_| rng.gen_bool(density)).collect()
    }

    fn mask_to_set(mask: &[bool]) -> CellSet {
        let mut s = CellSet::new(mask.len());
        for (i, &m) in mask.iter().enumerate() {
            if m {
                s.insert(i);
            }
        }
        s
    }

    #[test]
    fn labeling_matches_oracle_on_random_masks() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..40 {
            let (w, h) = (rng.gen_range(1..40usize), rng.gen_range(1..40usize));
            let density = [0.1, 0.35, 0.5, 0.8][trial % 4];
            let mask = random_mask(&mut rng, w * h, density);
            let set = mask_to_set(&mask);
            for conn in [Connectivity::Four, Connectivity::Eight] {
                let got = label_components(&set, w as u32, h as u32, conn);
                let want = oracle_components(&mask, w, h, conn);
                let want_count = want.iter().copied().max().unwrap_or(-1) + 1;
                assert_eq!(got.count as i32, want_count, "component count {w}x{h}");
                // same partition: labels must be related by a bijection
                let mut map = std::collections::HashMap::new();
                for idx in 0..mask.len() {
                    if mask[idx] {
                        let pair = (got.labels[idx], want[idx]);
                        assert_eq!(*map.entry(pair.0).or_insert(pair.1), pair.1);
                    } else {
                        assert_eq!(got.labels[idx], BACKGROUND);
                    }
                }
            }
        }
    }

    #[test]
    fn labeling_ids_are_row_major_first_seen() {
        // two dots: the one earlier in row-major order gets label 0
        let mut set = CellSet::new(25);
        set.insert(5 * 3 + 4); // later
        set.insert(5 * 1 + 1); // earlier
        let lab = label_components(&set, 5, 5, Connectivity::Eight);
        assert_eq!(lab.count, 2);
        assert_eq!(lab.labels[5 * 1 + 1], 0);
        assert_eq!(lab.labels[5 * 3 + 4], 1);
    }

    #[test]
    fn edt_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..25 {
            let (w, h) = (rng.gen_range(1..30usize), rng.gen_range(1..30usize));
            let mask = random_mask(&mut rng, w * h, 0.15);
            let set = mask_to_set(&mask);
            let got = squared_edt(&set, w as u32, h as u32);
            for j in 0..h {
                for i in 0..w {
                    let mut want = f64::INFINITY;
                    for jj in 0..h {
                        for ii in 0..w {
                            if mask[jj * w + ii] {
                                let d = ((i as f64 - ii as f64).powi(2)
                                    + (j as f64 - jj as f64).powi(2))
                                    as f64;
                                want = want.min(d);
                            }
                        }
                    }
                    let g = got[j * w + i];
                    assert!(
                        (g - want).abs() < 1e-9 || (g.is_infinite() && want.is_infinite()),
                        "edt mismatch at ({i},{j}): {g} vs {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn cover_aligns_centers_and_margins() {
        let lo = Complex64::new(0.0, 0.0);
        let hi = Complex64::new(1.0, 2.0);
        let g = Grid::cover(lo, hi, 1.0 / 243.0, 4).unwrap();
        // lo lands exactly on the center of cell (4, 4)
        let c = g.center(4, 4);
        assert!((c - lo).norm() < 1e-12);
        assert_eq!(g.width, 243 + 9);
        assert_eq!(g.height, 486 + 9);
        let (i, j) = g.locate(Complex64::new(1.0, 2.0)).unwrap();
        assert_eq!((i, j), (247, 490));
        assert!(Grid::cover(lo, hi, 0.0, 1).is_err());
        assert!(Grid::cover(hi, lo, 0.5, 1).is_err());
    }

    #[test]
    fn disk_is_strict_and_validates() {
        let g = Grid::cover(Complex64::new(-1.0, -1.0), Complex64::new(1.0, 1.0), 0.25, 0).unwrap();
        let mut r = Raster::empty(g);
        assert!(r.fill_disk(Complex64::new(0.0, 0.0), 0.0).is_err());
        assert!(r.fill_disk(Complex64::new(0.0, 0.0), -1.0).is_err());
        r.fill_disk(Complex64::new(0.0, 0.0), 0.5).unwrap();
        // strict inequality: centers at distance exactly 0.5 stay unmarked
        let (i, j) = r.grid.locate(Complex64::new(0.5, 0.0)).unwrap();
        assert!(!r.cells.contains(r.grid.index(i, j)));
        let (i, j) = r.grid.locate(Complex64::new(0.25, 0.0)).unwrap();
        assert!(r.cells.contains(r.grid.index(i, j)));
    }

    #[test]
    fn circle_band_width_and_validation() {
        let g = Grid::cover(Complex64::new(-2.0, -2.0), Complex64::new(2.0, 2.0), 0.05, 2).unwrap();
        let mut r = Raster::empty(g.clone());
        assert!(matches!(
            r.draw_circle(Complex64::new(0.0, 0.0), 0.08),
            Err(Error::CircleUnresolvable { .. })
        ));
        r.draw_circle(Complex64::new(0.0, 0.0), 1.0).unwrap();
        // band is one connected loop with a hole: complement has 2 components
        let lab = label_components(&r.cells, g.width, g.height, Connectivity::Eight);
        assert_eq!(lab.count, 1);
        let mut comp = CellSet::new(g.len());
        for idx in 0..g.len() {
            if !r.cells.contains(idx) {
                comp.insert(idx);
            }
        }
        let lab = label_components(&comp, g.width, g.height, Connectivity::Four);
        assert_eq!(lab.count, 2);
    }

    #[test]
    fn segment_marching_is_thin_and_connected() {
        let g = Grid::cover(Complex64::new(0.0, 0.0), Complex64::new(1.0, 1.0), 0.02, 2).unwrap();
        let mut r = Raster::empty(g.clone());
        r.draw_segment(Complex64::new(0.03, 0.1), Complex64::new(0.9, 0.77), 0.0);
        let lab = label_components(&r.cells, g.width, g.height, Connectivity::Eight);
        assert_eq!(lab.count, 1);
        // every row the segment crosses carries at most 3 marked cells
        for j in 0..g.height {
            let per_row = (0..g.width)
                .filter(|&i| r.cells.contains(g.index(i, j)))
                .count();
            assert!(per_row <= 3, "row {j} has {per_row} cells");
        }
    }

    #[test]
    fn hausdorff_cells_exact_on_small_sets() {
        let g = Grid::cover(Complex64::new(0.0, 0.0), Complex64::new(9.0, 9.0), 1.0, 0).unwrap();
        let mut a = CellSet::new(g.len());
        let mut b = CellSet::new(g.len());
        a.insert(g.index(0, 0));
        b.insert(g.index(3, 4)); // distance 5
        b.insert(g.index(0, 1)); // distance 1
        let d = hausdorff_cells(&a, &b, &g).unwrap();
        // directed a->b = 1, directed b->a = 5
        assert!((d - 5.0).abs() < 1e-12);
        let empty = CellSet::new(g.len());
        assert!(hausdorff_cells(&a, &empty, &g).is_err());
        assert!(hausdorff_cells(&empty, &b, &g).is_err());
    }

    #[test]
    fn hausdorff_points_matches_cells() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = Grid::cover(Complex64::new(0.0, 0.0), Complex64::new(19.0, 19.0), 1.0, 0).unwrap();
        for _ in 0..10 {
            let mut a = CellSet::new(g.len());
            let mut b = CellSet::new(g.len());
            let mut ap = Vec::new();
            let mut bp = Vec::new();
            for _ in 0..rng.gen_range(1..15) {
                let (i, j) = (rng.gen_range(0..20u32), rng.gen_range(0..20u32));
                a.insert(g.index(i, j));
            }
            for _ in 0..rng.gen_range(1..15) {
                let (i, j) = (rng.gen_range(0..20u32), rng.gen_range(0..20u32));
                b.insert(g.index(i, j));
            }
            for idx in a.ones() {
                ap.push(g.center_of(idx));
            }
            for idx in b.ones() {
                bp.push(g.center_of(idx));
            }
            let dc = hausdorff_cells(&a, &b, &g).unwrap();
            let dp = hausdorff_points(&ap, &bp).unwrap();
            assert!((dc - dp).abs() < 1e-9, "{dc} vs {dp}");
        }
    }

    #[test]
    fn diameter_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let n = rng.gen_range(1..60usize);
            let pts: Vec<(i64, i64)> = (0..n)
                .map(|_| (rng.gen_range(-50..50i64), rng.gen_range(-50..50i64)))
                .collect();
            let want = pts
                .iter()
                .flat_map(|&p| pts.iter().map(move |&q| {
                    let (dx, dy) = (p.0 - q.0, p.1 - q.1);
                    dx * dx + dy * dy
                }))
                .max()
                .unwrap();
            assert_eq!(diameter_sq(&pts), want);
        }
    }

    #[test]
    fn cellset_ops() {
        let mut a = CellSet::new(130);
        a.insert(0);
        a.insert(64);
        a.insert(129);
        assert_eq!(a.count(), 3);
        assert!(a.contains(64));
        a.remove(64);
        assert!(!a.contains(64));
        let mut b = CellSet::new(130);
        b.insert(0);
        b.insert(100);
        a.union_with(&b);
        assert_eq!(a.count(), 3);
        a.subtract(&b);
        assert_eq!(a.count(), 1);
        assert!(a.contains(129));
        assert_eq!(a.ones().collect::<Vec<_>>(), vec![129]);
    }
}
