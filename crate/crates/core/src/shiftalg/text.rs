//! Table layout for degree operators.

use std::fmt;

use super::{DegreeOp, Shift};

fn part(out: &mut String, letter: char, d: i32) {
    if d == 0 {
        return;
    }
    out.push(letter);
    out.push(if d > 0 { '+' } else { '-' });
    if d.abs() > 1 {
        out.push_str(&format!("^{}", d.abs()));
    }
}

/// `S+T-`, `S-^2`, `I` and so on; `S` moves `n` and `T` moves `k`.
pub fn shift_name(s: Shift) -> String {
    if s == (0, 0) {
        return "I".into();
    }
    let mut out = String::new();
    part(&mut out, 'S', s.0);
    part(&mut out, 'T', s.1);
    out
}

/// One row per shift, `S` shifts descending before `T` shifts.
impl fmt::Display for DegreeOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut rows: Vec<_> = self.terms().filter(|(_, c)| !c.is_zero()).collect();
        rows.sort_by_key(|(s, _)| (std::cmp::Reverse(s.0), std::cmp::Reverse(s.1)));
        let width = rows.iter().map(|(s, _)| shift_name(**s).len()).max().unwrap_or(1);
        for (i, (s, c)) in rows.into_iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{:<width$} | {}", shift_name(*s), c.reduce())?;
        }
        Ok(())
    }
}

impl fmt::Debug for DegreeOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shiftalg::dbuiltin;

    #[test]
    fn names() {
        assert_eq!(shift_name((1, 1)), "S+T+");
        assert_eq!(shift_name((-1, 0)), "S-");
        assert_eq!(shift_name((0, -2)), "T-^2");
        assert_eq!(shift_name((0, 0)), "I");
    }

    #[test]
    fn table_layout() {
        let t = dbuiltin("X1h").unwrap().to_string();
        let first: Vec<&str> = t.lines().map(|l| l.split(" | ").next().unwrap()).collect();
        assert_eq!(first, ["S+", "I ", "S-"]);
        assert_eq!(DegreeOp::zero().to_string(), "0");
    }
}
