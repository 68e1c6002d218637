//! Multivariate polynomials with rational coefficients.
//!
//! Text grammar: a sum of terms separated by `+` or `-`. A term is an
//! optional rational coefficient followed by factors `x<i>` or `x<i>^<e>`,
//! joined by `*` or juxtaposition. Variables are numbered from 1.
//!
//! ```
//! use orchard::poly::Polynomial;
//! use orchard::exact::rat;
//!
//! let p = Polynomial::parse("x1^2 + x2^2 - 3/2 x1*x2", 2).unwrap();
//! assert_eq!(p.eval(&[rat(1), rat(2)]), rat(2));
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exact::{format_rat, parse_rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: usize,
    /// Exponent vector to nonzero coefficient.
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Polynomial {
    pub fn zero(vars: usize) -> Self {
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: Rat) -> Self {
        let mut p = Polynomial::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    /// The monomial `x_{var+1}^exp` (0-based `var`).
    pub fn monomial(vars: usize, var: usize, exp: u32) -> Self {
        let mut e = vec![0; vars];
        e[var] = exp;
        let mut p = Polynomial::zero(vars);
        p.add_term(e, Rat::one());
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rat)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&vec![0; self.vars])
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn scaled(&self, c: &Rat) -> Polynomial {
        let mut p = Polynomial::zero(self.vars);
        for (e, v) in &self.terms {
            p.add_term(e.clone(), v * c);
        }
        p
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        for (e, v) in &other.terms {
            p.add_term(e.clone(), v.clone());
        }
        p
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut p = Polynomial::zero(self.vars);
        for (e1, v1) in &self.terms {
            for (e2, v2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, v1 * v2);
            }
        }
        p
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        assert_eq!(x.len(), self.vars, "wrong number of variables");
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().zip(x).fold(c.clone(), |acc, (&k, xi)| {
                    acc * num_traits::pow(xi.clone(), k as usize)
                })
            })
            .sum()
    }

    pub fn parse(text: &str, vars: usize) -> Result<Polynomial, String> {
        Parser {
            s: text.as_bytes(),
            pos: 0,
            vars,
        }
        .polynomial()
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    vars: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &str {
        let start = self.pos;
        while self.pos < self.s.len() && f(self.s[self.pos]) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).expect("ascii")
    }

    fn polynomial(&mut self) -> Result<Polynomial, String> {
        let mut p = Polynomial::zero(self.vars);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if first => return Err("empty polynomial".into()),
                None => return Ok(p),
                Some(b'+') => {
                    self.pos += 1;
                    Rat::one()
                }
                Some(b'-') => {
                    self.pos += 1;
                    -Rat::one()
                }
                Some(_) if first => Rat::one(),
                Some(c) => return Err(format!("unexpected '{}'", c as char)),
            };
            first = false;
            let (exps, c) = self.term()?;
            p.add_term(exps, c * sign);
        }
    }

    fn term(&mut self) -> Result<(Vec<u32>, Rat), String> {
        let mut coef = Rat::one();
        let mut exps = vec![0u32; self.vars];
        let mut seen = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let lit = self
                .take_while(|c| c.is_ascii_digit() || c == b'/')
                .to_string();
            coef = parse_rat(&lit)?;
            seen = true;
        }
        loop {
            match self.peek() {
                Some(b'*') if seen => {
                    self.pos += 1;
                    if self.peek() != Some(b'x') {
                        return Err("expected a variable after '*'".into());
                    }
                }
                Some(b'x') => {
                    self.pos += 1;
                    let idx = self.take_while(|c| c.is_ascii_digit());
                    let i: usize = idx
                        .parse()
                        .map_err(|_| "variable needs an index, as in x1".to_string())?;
                    if i == 0 || i > self.vars {
                        return Err(format!("variable x{i} out of range x1..x{}", self.vars));
                    }
                    let mut e = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        e = self
                            .take_while(|c| c.is_ascii_digit())
                            .parse()
                            .map_err(|_| "exponent must be a nonnegative integer".to_string())?;
                    }
                    exps[i - 1] += e;
                    seen = true;
                }
                _ if seen => return Ok((exps, coef)),
                Some(c) => return Err(format!("unexpected '{}'", c as char)),
                None => return Err("dangling sign".into()),
            }
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c < &Rat::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, x)
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{}", format_rat(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", format_rat(&abs))?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
