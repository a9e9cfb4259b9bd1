//! Single-qubit SU(2) kernel: rotations, Euler decomposition, and the
//! three-rotation turnover `R_x(a) R_z(b) R_x(c) = R_z(α) R_x(β) R_z(γ)`.
//!
//! Rotations follow `R_P(θ) = exp(-iθP)`.

use core::f64::consts::{FRAC_PI_2, PI};
use core::ops::Mul;

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    /// The partner axis in an X/Z Euler pair. `Y` has no partner and maps to itself.
    pub fn swap_xz(self) -> Axis {
        match self {
            Axis::X => Axis::Z,
            Axis::Z => Axis::X,
            Axis::Y => Axis::Y,
        }
    }
}

/// A 2x2 complex matrix, intended to be special unitary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Su2 {
    m: [[Complex64; 2]; 2],
}

impl Default for Su2 {
    fn default() -> Self {
        Su2::identity()
    }
}

impl Su2 {
    pub const fn identity() -> Su2 {
        Su2 { m: [[ONE, ZERO], [ZERO, ONE]] }
    }

    pub const fn from_matrix(m: [[Complex64; 2]; 2]) -> Su2 {
        Su2 { m }
    }

    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        self.m
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.m[r][c]
    }

    /// `exp(-iθ·P)` for a Pauli axis `P`.
    pub fn rotation(axis: Axis, theta: f64) -> Su2 {
        let (s, c) = libm::sincos(theta);
        let m = match axis {
            Axis::X => [
                [Complex64::new(c, 0.0), Complex64::new(0.0, -s)],
                [Complex64::new(0.0, -s), Complex64::new(c, 0.0)],
            ],
            Axis::Y => [
                [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
                [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
            ],
            Axis::Z => [
                [Complex64::new(c, -s), ZERO],
                [ZERO, Complex64::new(c, s)],
            ],
        };
        Su2 { m }
    }

    /// Angle of a matrix assumed to be a pure rotation about `axis`.
    pub fn rotation_angle(&self, axis: Axis) -> f64 {
        let c = self.m[0][0].re;
        let s = match axis {
            Axis::X => -self.m[0][1].im,
            Axis::Y => self.m[1][0].re,
            Axis::Z => -self.m[0][0].im,
        };
        libm::atan2(s, c)
    }

    pub fn adjoint(&self) -> Su2 {
        let m = self.m;
        Su2 {
            m: [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]],
        }
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn neg(&self) -> Su2 {
        let m = self.m;
        Su2 { m: [[-m[0][0], -m[0][1]], [-m[1][0], -m[1][1]]] }
    }

    /// Frobenius norm of `self - other`.
    pub fn distance(&self, other: &Su2) -> f64 {
        let mut acc = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                acc += (self.m[r][c] - other.m[r][c]).norm_sqr();
            }
        }
        libm::sqrt(acc)
    }

    /// `‖U†U − I‖_F`.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self).distance(&Su2::identity())
    }

    /// Exact structural identity test (no tolerance).
    pub fn is_identity(&self) -> bool {
        *self == Su2::identity()
    }

    /// Conjugation by the Hadamard matrix, which swaps the X and Z axes.
    pub fn hadamard_conjugate(&self) -> Su2 {
        let [[a, b], [c, d]] = self.m;
        let h = 0.5;
        Su2 {
            m: [
                [(a + b + c + d) * h, (a - b + c - d) * h],
                [(a + b - c - d) * h, (a - b - c + d) * h],
            ],
        }
    }
}

impl Mul for Su2 {
    type Output = Su2;

    fn mul(self, rhs: Su2) -> Su2 {
        let a = self.m;
        let b = rhs.m;
        let mut m = [[ZERO; 2]; 2];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Su2 { m }
    }
}

/// `sign · R_o(angles[0]) R_i(angles[1]) R_o(angles[2])`, where `o` is the outer
/// axis and `i` the other member of the X/Z pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerTriple {
    pub outer: Axis,
    pub angles: [f64; 3],
    /// `+1` or `-1`; the overall sign is never silently dropped.
    pub sign: f64,
}

impl EulerTriple {
    pub fn new(outer: Axis, angles: [f64; 3]) -> EulerTriple {
        EulerTriple { outer, angles, sign: 1.0 }
    }

    pub fn to_su2(&self) -> Su2 {
        let inner = self.outer.swap_xz();
        let u = Su2::rotation(self.outer, self.angles[0])
            * Su2::rotation(inner, self.angles[1])
            * Su2::rotation(self.outer, self.angles[2]);
        if self.sign < 0.0 {
            u.neg()
        } else {
            u
        }
    }
}

/// Reduce an angle into `(-π/2, π/2]`.
fn reduce_half_pi(x: f64) -> f64 {
    let mut y = x - PI * libm::round(x / PI);
    if y <= -FRAC_PI_2 {
        y += PI;
    } else if y > FRAC_PI_2 {
        y -= PI;
    }
    y
}

/// Reduce an angle into `(-π, π]`.
pub fn wrap_angle(x: f64) -> f64 {
    let mut y = x - 2.0 * PI * libm::round(x / (2.0 * PI));
    if y <= -PI {
        y += 2.0 * PI;
    } else if y > PI {
        y -= 2.0 * PI;
    }
    y
}

fn phase(theta: f64) -> Complex64 {
    let (s, c) = libm::sincos(theta);
    Complex64::new(c, s)
}

/// Z-X-Z angles of a special unitary.
///
/// Writing `U00 = cos q·e^{-is}` and `U10 = -i sin q·e^{id}` with `s = p + r`,
/// `d = p − r`, both `s` and `d` are fixed mod π by the phases of those entries,
/// after which `q` follows from a single `atan2`. Degenerate inputs are
/// canonicalised: when `sin q = 0` the rotation is pushed into the first angle,
/// when `cos q = 0` the sum `s` is taken as zero.
fn zxz_angles(u: &Su2) -> [f64; 3] {
    let u00 = u.get(0, 0);
    let iu10 = Complex64::new(0.0, 1.0) * u.get(1, 0);

    let (s, cq) = if u00.norm_sqr() == 0.0 {
        (0.0, 0.0)
    } else {
        let s = reduce_half_pi(-u00.arg());
        (s, (u00 * phase(s)).re)
    };
    let (d, sq) = if iu10.norm_sqr() == 0.0 {
        (s, 0.0)
    } else {
        let d = reduce_half_pi(iu10.arg());
        (d, (iu10 * phase(-d)).re)
    };
    let q = wrap_angle(libm::atan2(sq, cq));
    [(s + d) / 2.0, q, (s - d) / 2.0]
}

/// Euler decomposition of `u` with the given outer axis (X or Z).
///
/// The returned triple reconstructs `u` exactly up to rounding; its `sign`
/// records whether a `-1` had to be factored out.
pub fn euler_extract(u: &Su2, outer: Axis) -> EulerTriple {
    assert!(outer != Axis::Y, "Euler pairs use the X and Z axes");
    let angles = match outer {
        Axis::Z => zxz_angles(u),
        _ => zxz_angles(&u.hadamard_conjugate()),
    };
    let mut t = EulerTriple::new(outer, angles);
    let rec = t.to_su2();
    if rec.distance(u) > rec.neg().distance(u) {
        t.sign = -1.0;
    }
    t
}

/// Re-express an X-Z-X (or Z-X-Z) triple with the opposite outer axis.
pub fn su2_turnover(t: &EulerTriple) -> EulerTriple {
    euler_extract(&t.to_su2(), t.outer.swap_xz())
}
