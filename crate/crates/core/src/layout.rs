//! Screen layouts and the regions they divide the unit square into.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Layout {
    /// Three horizontal bands.
    Menu3,
    /// Two horizontal bands.
    Menu2,
    /// Six-dot cell: two columns of three rows.
    Dot6,
    /// `rows` equal horizontal rows.
    List { rows: usize },
    /// One region covering the whole screen.
    Text,
}

impl Layout {
    pub fn region_count(self) -> usize {
        match self {
            Layout::Menu3 => 3,
            Layout::Menu2 => 2,
            Layout::Dot6 => 6,
            Layout::List { rows } => rows.max(1),
            Layout::Text => 1,
        }
    }
}

/// Index of the band holding `v` when [0,1] is cut into `n` equal bands.
/// A boundary value belongs to the lower band.
fn band(v: f64, n: usize) -> usize {
    let scaled = v * n as f64;
    for i in 0..n {
        if scaled <= (i + 1) as f64 {
            return i;
        }
    }
    n - 1
}

/// Region under `(x, y)`. For [`Layout::Dot6`] region `i` is dot `i + 1`:
/// the left column holds dots 1-3 top to bottom, the right column 4-6.
pub fn hit_test(layout: Layout, x: f64, y: f64) -> usize {
    let x = x.clamp(0.0, 1.0);
    let y = y.clamp(0.0, 1.0);
    match layout {
        Layout::Menu3 => band(y, 3),
        Layout::Menu2 => band(y, 2),
        Layout::Dot6 => band(x, 2) * 3 + band(y, 3),
        Layout::List { rows } => band(y, rows.max(1)),
        Layout::Text => 0,
    }
}

/// Centre of region `index`; handy for scripting touches.
pub fn region_center(layout: Layout, index: usize) -> (f64, f64) {
    let mid = |i: usize, n: usize| (i as f64 + 0.5) / n as f64;
    match layout {
        Layout::Dot6 => (mid(index / 3, 2), mid(index % 3, 3)),
        Layout::Text => (0.5, 0.5),
        other => (0.5, mid(index, other.region_count())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn menu_bands() {
        assert_eq!(hit_test(Layout::Menu3, 0.5, 0.1), 0);
        assert_eq!(hit_test(Layout::Menu3, 0.5, 0.5), 1);
        assert_eq!(hit_test(Layout::Menu3, 0.5, 0.9), 2);
        assert_eq!(hit_test(Layout::Menu2, 0.5, 0.5), 0);
        assert_eq!(hit_test(Layout::Menu2, 0.5, 0.51), 1);
    }

    #[test]
    fn dot_numbering() {
        assert_eq!(hit_test(Layout::Dot6, 0.2, 0.5) + 1, 2);
        assert_eq!(hit_test(Layout::Dot6, 0.8, 0.9) + 1, 6);
        assert_eq!(hit_test(Layout::Dot6, 0.2, 0.1) + 1, 1);
        assert_eq!(hit_test(Layout::Dot6, 0.8, 0.1) + 1, 4);
        // boundaries go to the lower index
        assert_eq!(hit_test(Layout::Dot6, 0.5, 1.0 / 3.0) + 1, 1);
    }

    #[test]
    fn centers_round_trip() {
        for layout in [Layout::Menu3, Layout::Menu2, Layout::Dot6, Layout::List { rows: 5 }] {
            for i in 0..layout.region_count() {
                let (x, y) = region_center(layout, i);
                assert_eq!(hit_test(layout, x, y), i, "{layout:?} {i}");
            }
        }
    }
}
