//! Recursive-descent parser for generator lists such as
//! `"eps(a^3), omega"` or `"sigma5(delta=a) ^ 2"`.
//!
//! ```text
//! spec := gen ("," gen)*
//! gen  := atom ("*" atom)* ("^" int)?
//! atom := omega | eps(elt) | tau(elt, elt) | aff(elt, elt, elt)
//!       | sigma4(delta=elt) | sigma5(delta=elt)
//! elt  := 0 | 1 | a | a^int
//! ```
//!
//! Whitespace is ignored. Positions in errors are byte offsets.

use super::Aut;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldTower, Fq2};

/// A generator together with its source text.
#[derive(Debug, Clone)]
pub struct LabeledGen {
    pub text: String,
    pub aut: Aut,
}

pub fn parse_spec(text: &str, tower: &FieldTower) -> Result<Vec<Aut>> {
    Ok(parse_spec_labeled(text, tower)?.into_iter().map(|g| g.aut).collect())
}

pub fn parse_spec_labeled(text: &str, tower: &FieldTower) -> Result<Vec<LabeledGen>> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, tower };
    p.skip_ws();
    if p.at_end() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    loop {
        p.skip_ws();
        let start = p.pos;
        let aut = p.gen()?;
        let label = text[start..p.pos].split_whitespace().collect::<Vec<_>>().join("");
        out.push(LabeledGen { text: label, aut });
        p.skip_ws();
        if p.at_end() {
            return Ok(out);
        }
        p.expect(b",")?;
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    tower: &'a FieldTower,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn peek(&mut self, tok: &[u8]) -> bool {
        self.skip_ws();
        self.src[self.pos..].starts_with(tok)
    }

    fn eat(&mut self, tok: &[u8]) -> bool {
        if self.peek(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &[u8]) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", String::from_utf8_lossy(tok)))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        s.parse().or_else(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }

    fn gen(&mut self) -> Result<Aut> {
        let t = self.tower;
        let mut acc = self.atom()?;
        while self.eat(b"*") {
            let rhs = self.atom()?;
            acc = acc.compose(t, &rhs);
        }
        if self.eat(b"^") {
            let n = self.int()?;
            acc = acc.pow(t, n);
        }
        Ok(acc)
    }

    fn ident(&mut self) -> &[u8] {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn atom(&mut self) -> Result<Aut> {
        let t = self.tower;
        let f = t.f2();
        self.skip_ws();
        let start = self.pos;
        let name = self.ident().to_vec();
        let constraint = |msg: &str| Error::Constraint { pos: start, msg: msg.to_string() };
        let affine = |a: Fq2, b: Fq2, c: Fq2| -> Result<Aut> {
            Aut::from_affine(t, a, b, c).map_err(|e| match e {
                Error::AffineZeroScale => constraint("aff needs a nonzero first entry"),
                _ => constraint("c^q + c != b^(q+1)"),
            })
        };
        match name.as_slice() {
            b"omega" => Ok(Aut::omega(t)),
            b"eps" => {
                self.expect(b"(")?;
                let e = self.elt()?;
                self.expect(b")")?;
                affine(e, f.zero(), f.zero())
            }
            b"tau" => {
                self.expect(b"(")?;
                let b = self.elt()?;
                self.expect(b",")?;
                let c = self.elt()?;
                self.expect(b")")?;
                affine(f.one(), b, c)
            }
            b"aff" => {
                self.expect(b"(")?;
                let a = self.elt()?;
                self.expect(b",")?;
                let b = self.elt()?;
                self.expect(b",")?;
                let c = self.elt()?;
                self.expect(b")")?;
                affine(a, b, c)
            }
            b"sigma4" | b"sigma5" => {
                self.expect(b"(")?;
                self.expect(b"delta")?;
                self.expect(b"=")?;
                let delta = self.elt()?;
                self.expect(b")")?;
                let dinv = f.inv(delta).ok_or_else(|| constraint("delta must be nonzero"))?;
                let (scale, c) = if name == b"sigma4" {
                    let c = if f.characteristic() == 2 { f.add(delta, dinv) } else { f.sub(delta, dinv) };
                    (f.one(), c)
                } else {
                    let k = t.a_pow(t.q() + 1);
                    (t.a(), f.sub(delta, f.mul(k, dinv)))
                };
                if !f.is_zero(f.add(f.frob_q(c), c)) {
                    return Err(constraint("delta has no admissible order for this family"));
                }
                let tau = affine(scale, f.zero(), c)?;
                Ok(tau.compose(t, &Aut::omega(t)))
            }
            b"" => self.err("expected generator"),
            other => {
                self.pos = start;
                self.err(format!("unknown generator '{}'", String::from_utf8_lossy(other)))
            }
        }
    }

    fn elt(&mut self) -> Result<Fq2> {
        let t = self.tower;
        let f = t.f2();
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(b'0') => {
                self.pos += 1;
                Ok(f.zero())
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(f.one())
            }
            Some(b'a') => {
                self.pos += 1;
                if self.eat(b"^") {
                    let k = self.int()?;
                    let n = (f.size() - 1) as i64;
                    Ok(t.a_pow(k.rem_euclid(n) as u64))
                } else {
                    Ok(t.a())
                }
            }
            _ => self.err("expected field element"),
        }
    }
}
