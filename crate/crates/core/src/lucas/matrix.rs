//! 2×2 matrices over a ring and the three companion-type matrices of a
//! second-order recurrence.

use crate::algebra::{ring::Field, RationalFunction, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct Mat2<T>(pub [[T; 2]; 2]);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Companion {
    /// `[[P, -Q], [1, 0]]`
    M,
    /// `[[0, -Q], [1, P]]`
    R,
    /// `[[0, -Q], [1, -P]]`
    A,
}

impl<T: Ring> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn identity() -> Self {
        Mat2::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn companion(p: &T, q: &T) -> Self {
        Mat2::new(p.clone(), q.neg(), T::one(), T::zero())
    }

    pub fn entry(&self, i: usize, j: usize) -> &T {
        &self.0[i][j]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let a = &self.0;
        let b = &o.0;
        let e = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
        Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Self::identity();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn det(&self) -> T {
        let m = &self.0;
        m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0]))
    }

    pub fn trace(&self) -> T {
        self.0[0][0].add(&self.0[1][1])
    }
}

impl<T: Field> Mat2<T> {
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det().inv()?;
        let m = &self.0;
        Some(Mat2::new(
            m[1][1].mul(&d),
            m[0][1].neg().mul(&d),
            m[1][0].neg().mul(&d),
            m[0][0].mul(&d),
        ))
    }

    /// Integer power; `None` when the matrix is singular and `k < 0`.
    pub fn pow_i(&self, k: i64) -> Option<Self> {
        if k >= 0 {
            Some(self.pow(k as u64))
        } else {
            Some(self.inverse()?.pow(k.unsigned_abs()))
        }
    }
}

impl Mat2<RationalFunction> {
    pub fn symbolic(which: Companion) -> Self {
        let p = RationalFunction::var("P");
        let q = RationalFunction::var("Q");
        let o = RationalFunction::one();
        let z = RationalFunction::zero();
        match which {
            Companion::M => Mat2::new(p, -&q, o, z),
            Companion::R => Mat2::new(z, -&q, o, p),
            Companion::A => Mat2::new(z, -&q, o, -&p),
        }
    }
}

/// `which^k` over `ℚ(P, Q)`; always invertible since `det = Q`.
pub fn matrix_power(which: Companion, k: i64) -> Mat2<RationalFunction> {
    Mat2::symbolic(which).pow_i(k).expect("companion matrices are invertible over Q(P, Q)")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lucas::{lucas_symbolic, LucasKind};

    #[test]
    fn small_powers() {
        let m1 = matrix_power(Companion::M, 1);
        assert_eq!(m1, Mat2::symbolic(Companion::M));
        assert_eq!(matrix_power(Companion::M, 0), Mat2::identity());
        let a2 = matrix_power(Companion::A, 2);
        let txt: Vec<String> = a2.0.iter().flatten().map(|e| e.to_string()).collect();
        assert_eq!(txt, ["-Q", "P*Q", "-P", "P^2 - Q"]);
    }

    #[test]
    fn closed_forms_of_powers() {
        let u = |k| lucas_symbolic(LucasKind::U, k);
        let q = RationalFunction::var("Q");
        for k in -5..=6 {
            let m = matrix_power(Companion::M, k);
            assert_eq!(m.0[0][0], u(k + 1));
            assert_eq!(m.0[0][1], -&(&q * &u(k)));
            assert_eq!(m.0[1][0], u(k));
            assert_eq!(m.0[1][1], -&(&q * &u(k - 1)));
        }
        // M^k = U_{k+1} I + U_k A
        let a = Mat2::symbolic(Companion::A);
        for k in 0..6 {
            let m = matrix_power(Companion::M, k);
            let rhs = Mat2::new(u(k + 1), RationalFunction::zero(), RationalFunction::zero(), u(k + 1));
            let ua = Mat2::new(&u(k) * &a.0[0][0], &u(k) * &a.0[0][1], &u(k) * &a.0[1][0], &u(k) * &a.0[1][1]);
            let sum = Mat2::new(&rhs.0[0][0] + &ua.0[0][0], &rhs.0[0][1] + &ua.0[0][1], &rhs.0[1][0] + &ua.0[1][0], &rhs.0[1][1] + &ua.0[1][1]);
            assert_eq!(m, sum);
        }
    }
}
