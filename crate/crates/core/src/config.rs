use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The general-position configuration and the six degenerate ones.
/// Points are indexed 1..=4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Configuration {
    #[serde(rename = "GENERAL")]
    General,
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
}

impl Configuration {
    pub const ALL: [Configuration; 7] = [
        Configuration::General,
        Configuration::P1,
        Configuration::P2,
        Configuration::P3,
        Configuration::P4,
        Configuration::P5,
        Configuration::P6,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Configuration::General => "GENERAL",
            Configuration::P1 => "P1",
            Configuration::P2 => "P2",
            Configuration::P3 => "P3",
            Configuration::P4 => "P4",
            Configuration::P5 => "P5",
            Configuration::P6 => "P6",
        }
    }

    pub fn collinear_set(self) -> &'static [usize] {
        match self {
            Configuration::General => &[],
            _ => &[1, 2, 3],
        }
    }

    /// Infinitely-near chains; each later point lies on the exceptional curve of the previous one.
    pub fn near_chains(self) -> &'static [&'static [usize]] {
        match self {
            Configuration::General | Configuration::P1 => &[],
            Configuration::P2 => &[&[2, 3]],
            Configuration::P3 => &[&[1, 2, 3]],
            Configuration::P4 => &[&[3, 4]],
            Configuration::P5 => &[&[2, 3, 4]],
            Configuration::P6 => &[&[1, 2, 3, 4]],
        }
    }

    pub fn next(self, i: usize) -> Option<usize> {
        for chain in self.near_chains() {
            if let Some(pos) = chain.iter().position(|&p| p == i) {
                return chain.get(pos + 1).copied();
            }
        }
        None
    }

    pub fn prev(self, i: usize) -> Option<usize> {
        for chain in self.near_chains() {
            if let Some(pos) = chain.iter().position(|&p| p == i) {
                return if pos == 0 { None } else { Some(chain[pos - 1]) };
            }
        }
        None
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Configuration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim().to_ascii_uppercase();
        let t = t.trim_start_matches("HAT");
        Ok(match t {
            "GENERAL" | "G" | "P0" => Configuration::General,
            "P1" => Configuration::P1,
            "P2" => Configuration::P2,
            "P3" => Configuration::P3,
            "P4" => Configuration::P4,
            "P5" => Configuration::P5,
            "P6" => Configuration::P6,
            _ => return Err(Error::UnknownConfig(s.to_string())),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_neighbours() {
        assert_eq!(Configuration::P5.next(2), Some(3));
        assert_eq!(Configuration::P5.next(4), None);
        assert_eq!(Configuration::P5.prev(2), None);
        assert_eq!(Configuration::P6.prev(4), Some(3));
        assert_eq!(Configuration::General.next(1), None);
    }

    #[test]
    fn parse_names() {
        for cfg in Configuration::ALL {
            assert_eq!(cfg.name().parse::<Configuration>().unwrap(), cfg);
        }
        assert_eq!("p3".parse::<Configuration>().unwrap(), Configuration::P3);
        assert!("P7".parse::<Configuration>().is_err());
    }
}
