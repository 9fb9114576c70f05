use core::fmt;
use core::str::FromStr;

/// How an agent fills its memory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    /// Each agent collects data from exactly `m` distinct nodes.
    Abide,
    /// Each agent makes `m` independent uniform draws; repeats are allowed.
    Eabide,
}

impl Scheme {
    pub const ALL: [Scheme; 2] = [Scheme::Abide, Scheme::Eabide];

    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Abide => "abide",
            Scheme::Eabide => "eabide",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = UnknownScheme;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "abide" => Ok(Scheme::Abide),
            "eabide" => Ok(Scheme::Eabide),
            _ => Err(UnknownScheme),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnknownScheme;

impl fmt::Display for UnknownScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("scheme must be one of: abide, eabide")
    }
}

impl core::error::Error for UnknownScheme {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamsError {
    NoNodes,
    NoAgents,
    ZeroMemory,
    /// ABIDE only: an agent cannot hold more distinct nodes than exist.
    MemoryExceedsNodes { m: u64, n: u64 },
    /// `m * k` does not fit in 64 bits.
    TooManyDraws,
}

impl fmt::Display for ParamsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamsError::NoNodes => f.write_str("n must satisfy n ≥ 1"),
            ParamsError::NoAgents => f.write_str("k must satisfy k ≥ 1"),
            ParamsError::ZeroMemory => f.write_str("m must satisfy m ≥ 1"),
            ParamsError::MemoryExceedsNodes { m, n } => {
                write!(f, "m must satisfy 1 ≤ m ≤ n (got m={m}, n={n})")
            }
            ParamsError::TooManyDraws => f.write_str("m·k must fit in 64 bits"),
        }
    }
}

impl core::error::Error for ParamsError {}

/// Network size `n`, per-agent memory `m` and agent count `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    n: u64,
    m: u64,
    k: u64,
}

impl Params {
    /// Validates `(n, m, k)` for `scheme`.
    ///
    /// Both schemes need `n, m, k ≥ 1`. ABIDE also needs `m ≤ n`; EABIDE
    /// draws with replacement, so any `m` is meaningful there.
    pub fn new(scheme: Scheme, n: u64, m: u64, k: u64) -> Result<Self, ParamsError> {
        if n == 0 {
            return Err(ParamsError::NoNodes);
        }
        if m == 0 {
            return Err(ParamsError::ZeroMemory);
        }
        if k == 0 {
            return Err(ParamsError::NoAgents);
        }
        if scheme == Scheme::Abide && m > n {
            return Err(ParamsError::MemoryExceedsNodes { m, n });
        }
        if m.checked_mul(k).is_none() {
            return Err(ParamsError::TooManyDraws);
        }
        Ok(Params { n, m, k })
    }

    pub fn abide(n: u64, m: u64, k: u64) -> Result<Self, ParamsError> {
        Self::new(Scheme::Abide, n, m, k)
    }

    pub fn eabide(n: u64, m: u64, k: u64) -> Result<Self, ParamsError> {
        Self::new(Scheme::Eabide, n, m, k)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// Total memory cells filled, `m·k`.
    pub fn draws(&self) -> u64 {
        self.m * self.k
    }

    /// Largest attainable coverage, `min(m·k, n)`.
    pub fn max_coverage(&self) -> u64 {
        self.draws().min(self.n)
    }

    pub fn fits(&self, scheme: Scheme) -> bool {
        scheme == Scheme::Eabide || self.m <= self.n
    }

    /// Same network and memory with a different agent count.
    pub fn with_agents(&self, k: u64) -> Result<Self, ParamsError> {
        if k == 0 {
            return Err(ParamsError::NoAgents);
        }
        if self.m.checked_mul(k).is_none() {
            return Err(ParamsError::TooManyDraws);
        }
        Ok(Params { k, ..*self })
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, m={}, k={})", self.n, self.m, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Params::abide(4, 2, 2).is_ok());
        assert_eq!(
            Params::abide(2, 3, 1),
            Err(ParamsError::MemoryExceedsNodes { m: 3, n: 2 })
        );
        assert!(Params::eabide(1, 3, 2).is_ok());
        assert_eq!(Params::abide(0, 1, 1), Err(ParamsError::NoNodes));
        assert_eq!(Params::eabide(3, 0, 1), Err(ParamsError::ZeroMemory));
        assert_eq!(Params::eabide(3, 1, 0), Err(ParamsError::NoAgents));
        assert_eq!(Params::eabide(3, u64::MAX, 2), Err(ParamsError::TooManyDraws));
        let msg = alloc::string::ToString::to_string(&ParamsError::MemoryExceedsNodes { m: 3, n: 2 });
        assert!(msg.contains("1 ≤ m ≤ n"));
    }

    #[test]
    fn coverage_bounds() {
        let p = Params::abide(10, 4, 3).unwrap();
        assert_eq!(p.draws(), 12);
        assert_eq!(p.max_coverage(), 10);
        assert_eq!(p.with_agents(2).unwrap().max_coverage(), 8);
    }

    #[test]
    fn scheme_names_round_trip() {
        for s in Scheme::ALL {
            assert_eq!(s.as_str().parse::<Scheme>(), Ok(s));
        }
        assert_eq!("EABIDE".parse::<Scheme>(), Ok(Scheme::Eabide));
        assert!("other".parse::<Scheme>().is_err());
    }
}
