//! Gauss-Jordan elimination over rational functions.

use crate::algebra::{factor_by_gcd, factor_fraction, LaurentPoly, RationalFunction};

use super::system::AnsatzSystem;

pub type Matrix = Vec<Vec<RationalFunction>>;

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionReport {
    pub unknowns: Vec<String>,
    pub rank: usize,
    pub nullity: usize,
    /// Only for square systems; rows in sample order, columns in unknown order.
    pub determinant: Option<RationalFunction>,
    /// `None` when the system is inconsistent.
    pub particular: Option<Vec<RationalFunction>>,
    pub nullspace: Vec<Vec<RationalFunction>>,
    /// Nonconstant factors whose vanishing lowers the rank.
    pub parameter_conditions: Vec<LaurentPoly>,
    /// Factors of the matrix entries, used to split the determinant.
    pub hints: Vec<LaurentPoly>,
}

impl SolutionReport {
    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }

    /// The determinant as `content * Π factor^e / Π factor^e`.
    pub fn determinant_factored(&self) -> Option<String> {
        self.determinant.as_ref().map(|d| factor_fraction(d, &self.hints).to_string())
    }
}

/// Reduced row echelon form of `[a | b]`. Returns pivot columns, the
/// pivot values in elimination order and the number of row swaps.
struct Echelon {
    rows: Matrix,
    rhs: Vec<RationalFunction>,
    pivots: Vec<usize>,
    pivot_values: Vec<RationalFunction>,
    swaps: usize,
}

fn eliminate(a: &Matrix, b: &[RationalFunction], cols: usize) -> Echelon {
    let mut rows = a.clone();
    let mut rhs = b.to_vec();
    let mut pivots = Vec::new();
    let mut pivot_values = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        // Smallest total degree keeps intermediate expressions small.
        let Some(p) = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| rows[i][c].weight()) else {
            continue;
        };
        if p != r {
            rows.swap(p, r);
            rhs.swap(p, r);
            swaps += 1;
        }
        let pv = rows[r][c].clone();
        let inv = pv.inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        rhs[r] = &rhs[r] * &inv;
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in 0..cols {
                if !rows[r][j].is_zero() {
                    rows[i][j] = &rows[i][j] - &(&f * &rows[r][j]);
                }
            }
            rhs[i] = &rhs[i] - &(&f * &rhs[r]);
        }
        pivots.push(c);
        pivot_values.push(pv);
        r += 1;
    }
    Echelon { rows, rhs, pivots, pivot_values, swaps }
}

/// Determinant by elimination.
pub fn determinant(a: &Matrix) -> RationalFunction {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        panic!("determinant of a non-square matrix");
    }
    let e = eliminate(a, &vec![RationalFunction::zero(); n], n);
    if e.pivots.len() < n {
        return RationalFunction::zero();
    }
    let mut d = RationalFunction::one();
    for p in &e.pivot_values {
        d = &d * p;
    }
    if e.swaps % 2 == 1 {
        -&d
    } else {
        d
    }
}

fn conditions(values: &[RationalFunction], hints: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let mut out: Vec<LaurentPoly> = Vec::new();
    for v in values {
        for (f, _) in factor_by_gcd(v.numer(), hints).factors {
            if !out.contains(&f) {
                out.push(f);
            }
        }
    }
    out
}

pub fn solve(sys: &AnsatzSystem) -> SolutionReport {
    let cols = sys.unknowns.len();
    let e = eliminate(&sys.matrix, &sys.rhs, cols);
    let rank = e.pivots.len();
    let consistent = e.rhs[rank..].iter().all(RationalFunction::is_zero);
    let particular = consistent.then(|| {
        let mut x = vec![RationalFunction::zero(); cols];
        for (i, &c) in e.pivots.iter().enumerate() {
            x[c] = e.rhs[i].clone();
        }
        x
    });
    let mut nullspace = Vec::new();
    for f in (0..cols).filter(|c| !e.pivots.contains(c)) {
        let mut v = vec![RationalFunction::zero(); cols];
        v[f] = RationalFunction::one();
        for (i, &c) in e.pivots.iter().enumerate() {
            v[c] = -&e.rows[i][f];
        }
        nullspace.push(v);
    }
    let mut hints: Vec<LaurentPoly> = Vec::new();
    for r in &sys.matrix {
        for x in r {
            for (f, _) in factor_by_gcd(x.numer(), &[]).factors {
                if !hints.contains(&f) {
                    hints.push(f);
                }
            }
        }
    }
    let square = sys.matrix.len() == cols;
    let determinant = square.then(|| {
        if rank < cols {
            return RationalFunction::zero();
        }
        let mut d = RationalFunction::one();
        for p in &e.pivot_values {
            d = &d * p;
        }
        if e.swaps % 2 == 1 {
            -&d
        } else {
            d
        }
    });
    let parameter_conditions = match &determinant {
        Some(d) if !d.is_zero() => conditions(std::slice::from_ref(d), &hints),
        _ => conditions(&e.pivot_values, &hints),
    };
    SolutionReport { unknowns: sys.unknowns.clone(), rank, nullity: cols - rank, determinant, particular, nullspace, parameter_conditions, hints }
}
