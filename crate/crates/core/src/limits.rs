/// Resource caps shared by every operation that materializes bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest block index `i` for which `B_i` may be built.
    pub block_cap: u64,
    /// Longest window that may be fetched by random access.
    pub window_cap: usize,
    /// Longest prefix (in bits) that may be held in memory.
    pub memory_cap: usize,
}

impl Limits {
    pub const DEFAULT_BLOCK_CAP: u64 = 30;
    pub const DEFAULT_WINDOW_CAP: usize = 1 << 20;
    pub const DEFAULT_MEMORY_CAP: usize = 1 << 31;
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            block_cap: Self::DEFAULT_BLOCK_CAP,
            window_cap: Self::DEFAULT_WINDOW_CAP,
            memory_cap: Self::DEFAULT_MEMORY_CAP,
        }
    }
}
