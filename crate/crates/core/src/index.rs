//! Banded one-dimensional range index.
//!
//! Points carry a position along a line or circle (`x` or an angle) and a
//! height `y`. They are bucketed into horizontal bands of fixed height and
//! sorted by position inside each band. A neighbour query asks, band by band,
//! for the positions within a reach that the caller computes from the band's
//! actual height range; candidates are then tested exactly by the caller.

#[derive(Debug, Clone)]
struct Band {
    pos: Vec<f64>,
    ids: Vec<u32>,
    y_min: f64,
    y_max: f64,
}

#[derive(Debug, Clone)]
pub struct BandIndex {
    band_height: f64,
    period: Option<f64>,
    bands: Vec<Band>,
}

/// Relative widening of every query interval; exact tests follow.
const SLACK: f64 = 1e-9;

impl BandIndex {
    /// `items` yields `(position, y)`; ids are the iteration order.
    pub fn new(items: impl IntoIterator<Item = (f64, f64)>, band_height: f64, period: Option<f64>) -> Self {
        let mut raw: Vec<Vec<(f64, u32, f64)>> = Vec::new();
        for (id, (pos, y)) in items.into_iter().enumerate() {
            let b = (y / band_height).floor().max(0.0) as usize;
            if b >= raw.len() {
                raw.resize_with(b + 1, Vec::new);
            }
            raw[b].push((pos, id as u32, y));
        }
        let bands = raw
            .into_iter()
            .map(|mut v| {
                v.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                let (y_min, y_max) =
                    v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p.2), hi.max(p.2)));
                Band { pos: v.iter().map(|p| p.0).collect(), ids: v.iter().map(|p| p.1).collect(), y_min, y_max }
            })
            .collect();
        BandIndex { band_height, period, bands }
    }

    pub fn band_height(&self) -> f64 {
        self.band_height
    }

    /// Visits every id whose position is within `reach(y_min, y_max)` of `pos`
    /// (the interval is widened slightly; callers test candidates exactly).
    pub fn query(&self, pos: f64, mut reach: impl FnMut(f64, f64) -> f64, mut visit: impl FnMut(u32)) {
        for band in self.bands.iter().filter(|b| !b.ids.is_empty()) {
            let r = reach(band.y_min, band.y_max);
            if r.is_nan() || r < 0.0 {
                continue;
            }
            let r = r * (1.0 + SLACK) + f64::MIN_POSITIVE;
            match self.period {
                Some(p) if 2.0 * r >= p => band.ids.iter().for_each(|&id| visit(id)),
                Some(p) => {
                    for shift in [-p, 0.0, p] {
                        band.visit_range(pos - r + shift, pos + r + shift, &mut visit);
                    }
                }
                None => band.visit_range(pos - r, pos + r, &mut visit),
            }
        }
    }

    /// Visits every id with position in `[x0, x1]` and `y` in `[y0, y1]`
    /// (non-periodic use only); `y_of` returns the height of an id.
    pub fn for_each_in_rect(
        &self,
        x0: f64,
        x1: f64,
        y0: f64,
        y1: f64,
        y_of: impl Fn(u32) -> f64,
        mut visit: impl FnMut(u32),
    ) {
        for band in &self.bands {
            if band.ids.is_empty() || band.y_max < y0 || band.y_min > y1 {
                continue;
            }
            band.visit_range(x0, x1, &mut |id| {
                let y = y_of(id);
                if y >= y0 && y <= y1 {
                    visit(id);
                }
            });
        }
    }
}

impl Band {
    fn visit_range(&self, lo: f64, hi: f64, visit: &mut impl FnMut(u32)) {
        let start = self.pos.partition_point(|&p| p < lo);
        let end = self.pos.partition_point(|&p| p <= hi);
        if start < end {
            self.ids[start..end].iter().for_each(|&id| visit(id));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_query_wraps_without_duplicates() {
        let pts = [(-3.0, 0.1), (3.0, 0.2), (0.0, 0.3), (1.0, 5.0)];
        let idx = BandIndex::new(pts, 1.0, Some(std::f64::consts::TAU));
        let mut seen = Vec::new();
        idx.query(3.1, |_, _| 0.5, |id| seen.push(id));
        seen.sort();
        assert_eq!(seen, vec![0, 1]);
        let mut all = Vec::new();
        idx.query(0.0, |_, _| 4.0, |id| all.push(id));
        all.sort();
        assert_eq!(all, vec![0, 1, 2, 3]);
    }

    #[test]
    fn reach_depends_on_band() {
        let pts = [(0.5, 0.0), (0.5, 3.0)];
        let idx = BandIndex::new(pts, 1.0, None);
        let mut seen = Vec::new();
        idx.query(0.0, |_, ymax| if ymax > 1.0 { 1.0 } else { 0.1 }, |id| seen.push(id));
        assert_eq!(seen, vec![1]);
    }
}
