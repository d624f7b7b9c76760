use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Named indeterminates, in their fixed global order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
    A,
    B,
    C,
    N,
    K,
    L,
    Tau,
}

pub const NVARS: usize = 9;

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::X,
        Var::Y,
        Var::A,
        Var::B,
        Var::C,
        Var::N,
        Var::K,
        Var::L,
        Var::Tau,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::A => "a",
            Var::B => "b",
            Var::C => "c",
            Var::N => "n",
            Var::K => "k",
            Var::L => "l",
            Var::Tau => "tau",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Some(match s {
            "x" => Var::X,
            "y" => Var::Y,
            "a" => Var::A,
            "b" => Var::B,
            "c" => Var::C,
            "n" => Var::N,
            "k" => Var::K,
            "l" | "ℓ" => Var::L,
            "tau" | "τ" => Var::Tau,
            _ => return None,
        })
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Var, Error> {
        Var::from_name(s).ok_or_else(|| Error::UnknownIndeterminate(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for v in Var::ALL {
            assert_eq!(v.name().parse::<Var>().unwrap(), v);
        }
        assert_eq!("ℓ".parse::<Var>().unwrap(), Var::L);
        assert!("z".parse::<Var>().is_err());
    }
}
