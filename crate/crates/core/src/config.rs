//! Run configuration shared by the CLI and the checkers.

use crate::arith::is_prime;
use crate::error::Error;
use crate::Result;

/// Caps and knobs for a run. Reports echo this so outputs are
/// self-describing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub primes: Vec<u64>,
    /// Bound on the number of cosets the enumerator may ever define.
    pub coset_budget: usize,
    /// Largest group order admitted by the bar-resolution computations.
    pub group_cap: usize,
    /// Largest degree for group cohomology (coboundary targets go one
    /// higher).
    pub degree_cap: usize,
    /// Machine-readable output.
    pub machine: bool,
    /// Seed for the randomized property suites.
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            primes: vec![2],
            coset_budget: 10_000,
            group_cap: 16,
            degree_cap: 3,
            machine: false,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        for &p in &self.primes {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
        }
        if self.coset_budget == 0 || self.group_cap == 0 {
            return Err(Error::InvalidInput("caps must be positive".into()));
        }
        Ok(())
    }

    /// The `config.*` echo lines for machine output.
    pub fn echo_lines(&self) -> Vec<String> {
        let primes: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
        vec![
            format!("config.primes={}", primes.join(",")),
            format!("config.coset_budget={}", self.coset_budget),
            format!("config.group_cap={}", self.group_cap),
            format!("config.degree_cap={}", self.degree_cap),
            format!("config.seed={}", self.seed),
        ]
    }
}
