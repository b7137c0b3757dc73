//! Small shared utilities.

/// SplitMix64: a tiny deterministic PRNG for randomized property suites and
/// benches. Not cryptographic; fully reproducible from the seed.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, n)`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    /// Uniform in `[lo, hi]`.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + (self.below((hi - lo + 1) as u64) as i64)
    }
}

/// Spreadsheet-style generator names: 0 -> a, 25 -> z, 26 -> aa, ...
pub fn generator_name(mut i: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'a' + (i % 26) as u8);
        i /= 26;
        if i == 0 {
            break;
        }
        i -= 1;
    }
    out.reverse();
    String::from_utf8(out).unwrap()
}

/// Inverse of [`generator_name`]. Returns `None` for non-lowercase input.
pub fn generator_index(name: &str) -> Option<usize> {
    if name.is_empty() || !name.bytes().all(|b| b.is_ascii_lowercase()) {
        return None;
    }
    let mut idx = 0usize;
    for b in name.bytes() {
        idx = idx * 26 + (b - b'a') as usize + 1;
    }
    Some(idx - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for i in 0..1000 {
            assert_eq!(generator_index(&generator_name(i)), Some(i));
        }
        assert_eq!(generator_name(0), "a");
        assert_eq!(generator_name(25), "z");
        assert_eq!(generator_name(26), "aa");
        assert_eq!(generator_name(27), "ab");
    }

    #[test]
    fn splitmix_deterministic() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }
}
