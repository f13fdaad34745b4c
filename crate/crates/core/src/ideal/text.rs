//! Text and JSON forms of monomial ideals.
//!
//! ```text
//! ring x1 x2
//! x1^2
//! x1 x2
//! x2^2
//! ```
//!
//! The first line lists the variable space; each following line is one
//! generator as space-separated `var^exp` tokens (exponent 1 omitted, `1`
//! for the unit monomial). Layered variables are written `x_i_p`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde_json::{json, Value};

use super::{minimalize, Monomial, MonomialIdeal, Var, VariableSpace};
use crate::error::{Error, Result};

impl FromStr for Var {
    type Err = Error;

    fn from_str(tok: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad variable `{tok}`"));
        let num = |s: &str| s.parse::<usize>().ok().filter(|&v| v >= 1).ok_or_else(bad);
        if let Some(rest) = tok.strip_prefix("x_") {
            let (i, p) = rest.split_once('_').ok_or_else(bad)?;
            Ok(Var::Layered(num(i)?, num(p)?))
        } else if let Some(rest) = tok.strip_prefix('x') {
            Ok(Var::Simple(num(rest)?))
        } else {
            Err(bad())
        }
    }
}

fn write_monomial(f: &mut impl fmt::Write, space: &VariableSpace, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (v, &e) in space.vars().iter().zip(m.exponents()) {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_char(' ')?;
        }
        first = false;
        if e == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    if first {
        f.write_char('1')?;
    }
    Ok(())
}

impl MonomialIdeal {
    pub fn monomial_to_string(&self, m: &Monomial) -> String {
        let mut s = String::new();
        write_monomial(&mut s, &self.space, m).expect("writing to a String");
        s
    }

    /// Canonical multi-line text form.
    pub fn to_text(&self) -> String {
        let mut s = String::from("ring");
        for v in self.space.vars() {
            s.push(' ');
            s.push_str(&v.to_string());
        }
        s.push('\n');
        for m in &self.gens {
            write_monomial(&mut s, &self.space, m).expect("writing to a String");
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ring": self.space.vars().iter().map(Var::to_string).collect::<Vec<_>>(),
            "generators": self.gens.iter().map(|m| self.monomial_to_string(m)).collect::<Vec<_>>(),
        })
    }

    pub fn parse_monomial(space: &VariableSpace, line: &str) -> Result<Monomial> {
        let mut exps = vec![0u32; space.len()];
        let line = line.trim();
        if line == "1" {
            return Ok(Monomial::new(exps));
        }
        for tok in line.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((name, e)) => {
                    let e = e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?;
                    (name, e)
                }
                None => (tok, 1),
            };
            let var: Var = name.parse()?;
            let pos = space.position(&var).ok_or_else(|| Error::Parse(format!("variable {var} is not in the ring")))?;
            exps[pos] =
                exps[pos].checked_add(exp).ok_or_else(|| Error::Parse(format!("exponent overflow in `{line}`")))?;
        }
        Ok(Monomial::new(exps))
    }
}

impl FromStr for MonomialIdeal {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty ideal file".into()))?;
        let mut toks = header.split_whitespace();
        if toks.next() != Some("ring") {
            return Err(Error::Parse(format!("expected `ring <vars>`, found `{header}`")));
        }
        let vars = toks.map(str::parse::<Var>).collect::<Result<Vec<_>>>()?;
        let space = Arc::new(VariableSpace::new(vars).map_err(|e| Error::Parse(e.to_string()))?);
        let gens = lines.map(|l| MonomialIdeal::parse_monomial(&space, l)).collect::<Result<Vec<_>>>()?;
        minimalize(space, gens)
    }
}

impl fmt::Display for MonomialIdeal {
    /// One-line form such as `(x1^2, x1 x2, x2^2)`; the zero ideal is `(0)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (i, m) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write_monomial(f, &self.space, m)?;
        }
        write!(f, ")")
    }
}
