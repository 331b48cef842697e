//! Real quaternions and the slice calculus.
//!
//! Every non-real quaternion `q` lies in exactly one complex plane
//! `ℂ_I = ℝ + Iℝ`, where `I` is the normalised vector part of `q`. Functions
//! that are real on the real axis (powers, exponentials, the Bessel series)
//! act on `q` by acting on its complex image in that plane, which is how the
//! slice-regular operations in this crate are evaluated.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `w + x·i + y·j + z·k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    pub fn vector(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        // hypot-style scaling keeps tiny and huge components representable
        let m = self.w.abs().max(self.x.abs()).max(self.y.abs()).max(self.z.abs());
        if m == 0.0 || !m.is_finite() {
            return m;
        }
        (self.scale(1.0 / m).norm_sqr()).sqrt() * m
    }

    pub fn vector_norm(&self) -> f64 {
        Quaternion::new(0.0, self.x, self.y, self.z).norm()
    }

    pub fn scale(&self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// Euclidean inner product of the four components.
    pub fn dot(&self, other: &Quaternion) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn is_finite(&self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// `q⁻¹ = q̄ / |q|²`.
    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::domain("the zero quaternion has no inverse"));
        }
        Ok(self.conj().scale(1.0 / n2))
    }

    /// Image of `q` in its own slice, together with the slice unit.
    ///
    /// The imaginary part of the returned complex number is `|Im q| ≥ 0`.
    /// Real quaternions are placed in the slice of the canonical unit `i`.
    pub fn slice(&self) -> (Complex64, ImaginaryUnit) {
        let b = self.vector_norm();
        if b == 0.0 {
            return (Complex64::new(self.w, 0.0), ImaginaryUnit::I);
        }
        let unit = ImaginaryUnit(Quaternion::new(0.0, self.x / b, self.y / b, self.z / b));
        (Complex64::new(self.w, b), unit)
    }

    /// Polar form `modulus·(cos angle + unit·sin angle)` with `angle ∈ [0, π]`.
    pub fn slice_form(&self) -> SliceForm {
        let (c, unit) = self.slice();
        SliceForm {
            modulus: c.norm(),
            angle: c.arg(),
            unit,
        }
    }

    /// Applies a complex function inside the slice of `self`.
    ///
    /// `f` must map the real axis to itself for the result to be independent of
    /// the canonical unit chosen for real arguments.
    pub fn slice_map(&self, f: impl FnOnce(Complex64) -> Complex64) -> Self {
        let (c, unit) = self.slice();
        unit.embed(f(c))
    }

    /// `qⁿ`, evaluated in polar slice form.
    pub fn powi(&self, n: u32) -> Self {
        if n == 0 {
            return Quaternion::ONE;
        }
        if self.vector_norm() == 0.0 {
            return Quaternion::real(self.w.powi(n as i32));
        }
        let form = self.slice_form();
        form.unit.embed(Complex64::from_polar(
            form.modulus.powi(n as i32),
            form.angle * n as f64,
        ))
    }

    /// Principal slice power `q^p`, with the angle of `q` taken in `[0, π]`.
    pub fn powf(&self, p: f64) -> Self {
        if self.norm_sqr() == 0.0 {
            return if p == 0.0 { Quaternion::ONE } else { Quaternion::ZERO };
        }
        self.slice_map(|c| c.powf(p))
    }

    /// `e^{a + Ib} = e^a (cos b + I sin b)`.
    pub fn exp(&self) -> Self {
        self.slice_map(|c| c.exp())
    }
}

impl From<[f64; 4]> for Quaternion {
    fn from(v: [f64; 4]) -> Self {
        Quaternion::new(v[0], v[1], v[2], v[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        [q.w, q.x, q.y, q.z]
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.w, self.x, self.y, self.z)
    }
}

/// Parses the command-line syntax `"w,x,y,z"`.
impl FromStr for Quaternion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!(
                "expected four comma-separated components, got {s:?}"
            )));
        }
        let mut v = [0.0; 4];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p
                .parse()
                .map_err(|_| Error::Parse(format!("invalid quaternion component {p:?}")))?;
        }
        Ok(Quaternion::from(v))
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, r: Quaternion) -> Quaternion {
        let a = self;
        Quaternion::new(
            a.w * r.w - a.x * r.x - a.y * r.y - a.z * r.z,
            a.w * r.x + a.x * r.w + a.y * r.z - a.z * r.y,
            a.w * r.y - a.x * r.z + a.y * r.w + a.z * r.x,
            a.w * r.z + a.x * r.y - a.y * r.x + a.z * r.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q.scale(self)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Quaternion {
        self.scale(1.0 / s)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, r: Quaternion) {
        *self = *self + r;
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, r: Quaternion) {
        *self = *self - r;
    }
}

impl MulAssign for Quaternion {
    fn mul_assign(&mut self, r: Quaternion) {
        *self = *self * r;
    }
}

impl Sum for Quaternion {
    fn sum<It: Iterator<Item = Quaternion>>(iter: It) -> Quaternion {
        iter.fold(Quaternion::ZERO, Add::add)
    }
}

impl<'a> Sum<&'a Quaternion> for Quaternion {
    fn sum<It: Iterator<Item = &'a Quaternion>>(iter: It) -> Quaternion {
        iter.copied().sum()
    }
}

/// A pure unit quaternion, i.e. a square root of `-1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ImaginaryUnit(Quaternion);

impl ImaginaryUnit {
    pub const I: ImaginaryUnit = ImaginaryUnit(Quaternion::I);
    pub const J: ImaginaryUnit = ImaginaryUnit(Quaternion::J);
    pub const K: ImaginaryUnit = ImaginaryUnit(Quaternion::K);

    /// Normalises the vector `v`; fails on zero or non-finite input.
    pub fn new(v: [f64; 3]) -> Result<Self> {
        let q = Quaternion::new(0.0, v[0], v[1], v[2]);
        let n = q.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::domain(format!("{v:?} does not define an imaginary unit")));
        }
        Ok(ImaginaryUnit(q.scale(1.0 / n)))
    }

    /// Unit of the slice containing `q`, with the canonical `i` for real `q`.
    pub fn of(q: &Quaternion) -> Self {
        q.slice().1
    }

    pub fn as_quaternion(&self) -> Quaternion {
        self.0
    }

    /// `c.re + c.im · u`.
    pub fn embed(&self, c: Complex64) -> Quaternion {
        Quaternion::new(c.re, c.im * self.0.x, c.im * self.0.y, c.im * self.0.z)
    }

    /// Orthogonal projection of `q` onto `ℂ_u`, read as a complex number.
    pub fn project(&self, q: &Quaternion) -> Complex64 {
        Complex64::new(q.w, q.x * self.0.x + q.y * self.0.y + q.z * self.0.z)
    }

    /// A unit orthogonal to `self`, chosen deterministically.
    pub fn orthogonal(&self) -> ImaginaryUnit {
        let u = self.0.vector();
        let axis = (0..3)
            .min_by(|&a, &b| u[a].abs().total_cmp(&u[b].abs()))
            .unwrap_or(0);
        let mut e = [0.0; 3];
        e[axis] = 1.0;
        let d = u[axis];
        let v = [e[0] - d * u[0], e[1] - d * u[1], e[2] - d * u[2]];
        ImaginaryUnit::new(v).expect("a basis axis is never parallel to its least-aligned unit")
    }
}

impl FromStr for ImaginaryUnit {
    type Err = Error;

    /// Accepts `i`, `j`, `k` or a comma-separated vector `"x,y,z"`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "i" => Ok(ImaginaryUnit::I),
            "j" => Ok(ImaginaryUnit::J),
            "k" => Ok(ImaginaryUnit::K),
            other => {
                let parts: Vec<f64> = other
                    .split(',')
                    .map(|p| p.trim().parse::<f64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::Parse(format!("invalid imaginary unit {other:?}")))?;
                match parts[..] {
                    [x, y, z] => ImaginaryUnit::new([x, y, z]),
                    _ => Err(Error::Parse(format!("invalid imaginary unit {other:?}"))),
                }
            }
        }
    }
}

/// `q = modulus · (cos angle + unit · sin angle)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SliceForm {
    pub modulus: f64,
    pub angle: f64,
    pub unit: ImaginaryUnit,
}

impl SliceForm {
    pub fn reconstruct(&self) -> Quaternion {
        self.unit
            .embed(Complex64::from_polar(self.modulus, self.angle))
    }
}

/// Orthonormal frame `(I, J, IJ)` adapted to a slice.
///
/// Every quaternion splits uniquely as `a + b·J` with `a, b ∈ ℂ_I`, which turns
/// quaternion-valued slice-regular series into pairs of complex series.
#[derive(Clone, Copy, Debug)]
pub struct SliceFrame {
    pub i: ImaginaryUnit,
    pub j: ImaginaryUnit,
    k: Quaternion,
}

impl SliceFrame {
    pub fn new(i: ImaginaryUnit) -> Self {
        let j = i.orthogonal();
        let k = i.as_quaternion() * j.as_quaternion();
        SliceFrame { i, j, k }
    }

    pub fn split(&self, q: &Quaternion) -> (Complex64, Complex64) {
        let i = self.i.as_quaternion();
        let j = self.j.as_quaternion();
        let vi = q.x * i.x + q.y * i.y + q.z * i.z;
        let vj = q.x * j.x + q.y * j.y + q.z * j.z;
        let vk = q.x * self.k.x + q.y * self.k.y + q.z * self.k.z;
        (Complex64::new(q.w, vi), Complex64::new(vj, vk))
    }

    pub fn join(&self, a: Complex64, b: Complex64) -> Quaternion {
        self.i.embed(a) + self.i.embed(b) * self.j.as_quaternion()
    }
}
