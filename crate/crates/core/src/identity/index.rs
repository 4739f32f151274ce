use std::collections::BTreeMap;
use std::fmt;

/// Affine index `Σ aᵢ·kᵢ + d` over named integer variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexExpr {
    pub coeffs: BTreeMap<String, i64>,
    pub constant: i64,
}

impl IndexExpr {
    pub fn constant(c: i64) -> Self {
        IndexExpr { coeffs: BTreeMap::new(), constant: c }
    }

    pub fn var(name: &str) -> Self {
        Self::term(name, 1)
    }

    pub fn term(name: &str, coeff: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if coeff != 0 {
            coeffs.insert(name.to_string(), coeff);
        }
        IndexExpr { coeffs, constant: 0 }
    }

    pub fn from_parts(coeffs: impl IntoIterator<Item = (String, i64)>, constant: i64) -> Self {
        let mut out = IndexExpr::constant(constant);
        for (v, c) in coeffs {
            *out.coeffs.entry(v).or_insert(0) += c;
        }
        out.coeffs.retain(|_, c| *c != 0);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.constant == 0
    }

    pub fn as_constant(&self) -> Option<i64> {
        self.coeffs.is_empty().then_some(self.constant)
    }

    pub fn coeff(&self, var: &str) -> i64 {
        self.coeffs.get(var).copied().unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = &String> {
        self.coeffs.keys()
    }

    pub fn add(&self, o: &IndexExpr) -> IndexExpr {
        let mut out = self.clone();
        out.constant += o.constant;
        for (v, c) in &o.coeffs {
            *out.coeffs.entry(v.clone()).or_insert(0) += c;
        }
        out.coeffs.retain(|_, c| *c != 0);
        out
    }

    pub fn sub(&self, o: &IndexExpr) -> IndexExpr {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, s: i64) -> IndexExpr {
        if s == 0 {
            return IndexExpr::default();
        }
        IndexExpr {
            coeffs: self.coeffs.iter().map(|(v, c)| (v.clone(), c * s)).collect(),
            constant: self.constant * s,
        }
    }

    pub fn shift(&self, d: i64) -> IndexExpr {
        let mut out = self.clone();
        out.constant += d;
        out
    }

    /// The non-constant part.
    pub fn linear_part(&self) -> IndexExpr {
        IndexExpr { coeffs: self.coeffs.clone(), constant: 0 }
    }

    /// Replace bound variables by their values.
    pub fn substitute(&self, values: &BTreeMap<String, i64>) -> IndexExpr {
        let mut out = IndexExpr::constant(self.constant);
        for (v, c) in &self.coeffs {
            match values.get(v) {
                Some(x) => out.constant += c * x,
                None => {
                    out.coeffs.insert(v.clone(), *c);
                }
            }
        }
        out
    }

    /// Replace variables by index expressions.
    pub fn compose(&self, images: &BTreeMap<String, IndexExpr>) -> IndexExpr {
        let mut out = IndexExpr::constant(self.constant);
        for (v, c) in &self.coeffs {
            match images.get(v) {
                Some(e) => out = out.add(&e.scale(*c)),
                None => out = out.add(&IndexExpr::term(v, *c)),
            }
        }
        out
    }

    pub fn eval(&self, values: &BTreeMap<String, i64>) -> Option<i64> {
        let mut acc = self.constant;
        for (v, c) in &self.coeffs {
            acc += c * values.get(v)?;
        }
        Some(acc)
    }

    /// Coefficients reduced into `{0, 1}`; used for powers of `Q = -1`.
    pub fn mod2(&self) -> IndexExpr {
        let mut out = IndexExpr::constant(self.constant.rem_euclid(2));
        for (v, c) in &self.coeffs {
            if c.rem_euclid(2) == 1 {
                out.coeffs.insert(v.clone(), 1);
            }
        }
        out
    }
}

impl fmt::Display for IndexExpr {
    /// Positive coefficients first, then negative ones, then the constant:
    /// `2k+1`, `s-m`, `-k-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let pos = self.coeffs.iter().filter(|(_, c)| **c > 0);
        let neg = self.coeffs.iter().filter(|(_, c)| **c < 0);
        for (v, c) in pos.chain(neg) {
            let mag = c.unsigned_abs();
            if *c < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if mag != 1 {
                out.push_str(&mag.to_string());
            }
            out.push_str(v);
        }
        if self.constant != 0 || out.is_empty() {
            if self.constant > 0 && !out.is_empty() {
                out.push('+');
            }
            out.push_str(&self.constant.to_string());
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        assert_eq!(IndexExpr::var("k").scale(2).shift(1).to_string(), "2k+1");
        assert_eq!(IndexExpr::var("s").sub(&IndexExpr::var("m")).to_string(), "s-m");
        assert_eq!(IndexExpr::var("m").sub(&IndexExpr::var("s")).to_string(), "m-s");
        assert_eq!(IndexExpr::var("k").scale(-1).shift(-1).to_string(), "-k-1");
        assert_eq!(IndexExpr::constant(0).to_string(), "0");
        assert_eq!(IndexExpr::constant(-3).to_string(), "-3");
    }

    #[test]
    fn substitution_and_parity() {
        let e = IndexExpr::from_parts([("k".to_string(), 3), ("n".to_string(), -2)], -5);
        let vals = BTreeMap::from([("n".to_string(), 4)]);
        assert_eq!(e.substitute(&vals), IndexExpr::from_parts([("k".to_string(), 3)], -13));
        assert_eq!(e.mod2(), IndexExpr::from_parts([("k".to_string(), 1)], 1));
    }
}
