//! Four-component complex spinors and 4×4 complex matrices.

use core::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};
use num_complex::Complex64;
use num_traits::Float;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A Dirac 4-spinor sample, in momentum or position space.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Spinor4(pub [Complex64; 4]);

impl Spinor4 {
    pub const ZERO: Spinor4 = Spinor4([ZERO; 4]);

    pub fn new(c: [Complex64; 4]) -> Self {
        Spinor4(c)
    }

    pub fn from_real(c: [f64; 4]) -> Self {
        Spinor4(c.map(|x| Complex64::new(x, 0.0)))
    }

    /// Unit basis spinor `e_{index+1}`.
    pub fn basis(index: usize) -> Self {
        let mut s = Spinor4::ZERO;
        s.0[index] = ONE;
        s
    }

    /// `ψ†ψ`.
    #[inline]
    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// The hermitian inner product `self† · other`.
    #[inline]
    pub fn inner(&self, other: &Spinor4) -> Complex64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .fold(ZERO, |acc, (a, b)| acc + a.conj() * b)
    }

    #[inline]
    pub fn scale(&self, s: Complex64) -> Spinor4 {
        Spinor4(self.0.map(|c| c * s))
    }

    #[inline]
    pub fn scale_real(&self, s: f64) -> Spinor4 {
        Spinor4(self.0.map(|c| c * s))
    }

    pub fn conj(&self) -> Spinor4 {
        Spinor4(self.0.map(|c| c.conj()))
    }

    /// Euclidean distance `‖self − other‖`.
    pub fn distance(&self, other: &Spinor4) -> f64 {
        (*self - *other).norm()
    }
}

impl Index<usize> for Spinor4 {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Spinor4 {
    fn index_mut(&mut self, i: usize) -> &mut Complex64 {
        &mut self.0[i]
    }
}

impl Add for Spinor4 {
    type Output = Spinor4;
    fn add(self, o: Spinor4) -> Spinor4 {
        let mut r = self;
        r += o;
        r
    }
}

impl AddAssign for Spinor4 {
    fn add_assign(&mut self, o: Spinor4) {
        for (a, b) in self.0.iter_mut().zip(o.0) {
            *a += b;
        }
    }
}

impl Sub for Spinor4 {
    type Output = Spinor4;
    fn sub(self, o: Spinor4) -> Spinor4 {
        Spinor4(core::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for Spinor4 {
    type Output = Spinor4;
    fn neg(self) -> Spinor4 {
        Spinor4(self.0.map(|c| -c))
    }
}

/// A 4×4 complex matrix, row-major.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Matrix4(pub [[Complex64; 4]; 4]);

impl Matrix4 {
    pub const ZERO: Matrix4 = Matrix4([[ZERO; 4]; 4]);

    pub fn identity() -> Self {
        Matrix4::diagonal([1.0; 4])
    }

    pub fn diagonal(d: [f64; 4]) -> Self {
        let mut m = Matrix4::ZERO;
        for (i, x) in d.into_iter().enumerate() {
            m.0[i][i] = Complex64::new(x, 0.0);
        }
        m
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> Complex64) -> Self {
        Matrix4(core::array::from_fn(|i| core::array::from_fn(|j| f(i, j))))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix4 {
        Matrix4::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn scale(&self, s: Complex64) -> Matrix4 {
        Matrix4::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn scale_real(&self, s: f64) -> Matrix4 {
        Matrix4::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).fold(ZERO, |acc, i| acc + self.0[i][i])
    }

    pub fn column(&self, j: usize) -> Spinor4 {
        Spinor4(core::array::from_fn(|i| self.0[i][j]))
    }

    pub fn apply(&self, s: &Spinor4) -> Spinor4 {
        Spinor4(core::array::from_fn(|i| {
            (0..4).fold(ZERO, |acc, k| acc + self.0[i][k] * s.0[k])
        }))
    }

    /// Largest entry modulus; the norm used for all matrix identity checks.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|row| row.iter())
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (*self - self.adjoint()).max_abs() <= tol
    }

    /// Anticommutator `AB + BA`.
    pub fn anticommutator(&self, other: &Matrix4) -> Matrix4 {
        *self * *other + *other * *self
    }
}

impl Add for Matrix4 {
    type Output = Matrix4;
    fn add(self, o: Matrix4) -> Matrix4 {
        Matrix4::from_fn(|i, j| self.0[i][j] + o.0[i][j])
    }
}

impl Sub for Matrix4 {
    type Output = Matrix4;
    fn sub(self, o: Matrix4) -> Matrix4 {
        Matrix4::from_fn(|i, j| self.0[i][j] - o.0[i][j])
    }
}

impl Mul for Matrix4 {
    type Output = Matrix4;
    fn mul(self, o: Matrix4) -> Matrix4 {
        Matrix4::from_fn(|i, j| (0..4).fold(ZERO, |acc, k| acc + self.0[i][k] * o.0[k][j]))
    }
}

impl Mul<Spinor4> for Matrix4 {
    type Output = Spinor4;
    fn mul(self, s: Spinor4) -> Spinor4 {
        self.apply(&s)
    }
}
