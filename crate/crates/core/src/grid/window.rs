//! Anchored box windows.
//!
//! Two families: `U(n)` is the box [0,n]^d and `B(n)` the centred box
//! [-n,n]^d. Only their shapes matter here; patterns and configurations
//! store their own extents, and windows serve as the vocabulary for
//! sizes in sampling and measure computations.

/// Window family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WindowKind {
    /// [0, n]^d
    U,
    /// [-n, n]^d
    B,
}

/// An anchored box window in dimension 1 or 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub dim: u8,
    pub kind: WindowKind,
    pub n: u64,
}

impl Window {
    pub fn u(dim: u8, n: u64) -> Window {
        assert!(dim == 1 || dim == 2);
        Window { dim, kind: WindowKind::U, n }
    }

    pub fn b(dim: u8, n: u64) -> Window {
        assert!(dim == 1 || dim == 2);
        Window { dim, kind: WindowKind::B, n }
    }

    /// Cells along one axis.
    pub fn extent(&self) -> u64 {
        match self.kind {
            WindowKind::U => self.n + 1,
            WindowKind::B => 2 * self.n + 1,
        }
    }

    /// Total cell count.
    pub fn len(&self) -> u64 {
        let e = self.extent();
        match self.dim {
            1 => e,
            _ => e * e,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Inclusive coordinate range along each axis.
    pub fn range(&self) -> (i64, i64) {
        match self.kind {
            WindowKind::U => (0, self.n as i64),
            WindowKind::B => (-(self.n as i64), self.n as i64),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(Window::u(1, 3).len(), 4);
        assert_eq!(Window::u(2, 3).len(), 16);
        assert_eq!(Window::b(1, 3).len(), 7);
        assert_eq!(Window::b(2, 3).len(), 49);
        assert_eq!(Window::u(2, 0).len(), 1);
    }

    #[test]
    fn nesting() {
        for n in 0..10u64 {
            assert!(Window::u(2, n).len() < Window::u(2, n + 1).len());
        }
    }

    #[test]
    fn ranges() {
        assert_eq!(Window::u(1, 4).range(), (0, 4));
        assert_eq!(Window::b(1, 4).range(), (-4, 4));
    }
}
