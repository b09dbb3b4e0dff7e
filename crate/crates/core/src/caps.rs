/// Enumeration limits for brute-force operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum |R|^n for point enumeration in closure and evaluation-map work.
    pub points: u128,
    /// Maximum size of the function set built during closure.
    pub fixpoint: usize,
    /// Maximum q^n for solution enumeration over F_q^n.
    pub enumeration: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            points: 1024,
            fixpoint: 200_000,
            enumeration: 10_000_000,
        }
    }
}
