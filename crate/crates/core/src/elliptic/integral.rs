use crate::error::{Error, Result};
use crate::real::Real;

fn check_unit_interval(what: &'static str, x: &Real) -> Result<()> {
    if *x > 0.0 && *x < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            what,
            value: x.to_sci(20),
            domain: "(0, 1)",
        })
    }
}

/// Arithmetic–geometric mean of two positive numbers.
pub fn agm(a: &Real, b: &Real) -> Real {
    let mut a = a.clone();
    let mut b = b.clone();
    // MPFR bits bound the useful iterations; 2·log2(bits) is plenty.
    for _ in 0..64 {
        let next_a = (&a + &b) / 2;
        let next_b = (&a * &b).sqrt();
        let converged = (&next_a - &next_b).abs() <= next_a.abs() * tiny(&a);
        a = next_a;
        b = next_b;
        if converged {
            break;
        }
    }
    a
}

/// `2^-bits` at the precision of `x`.
fn tiny(x: &Real) -> Real {
    Real::from_i64(x.precision(), 2).powi(-(x.bits() as i32))
}

/// Complete elliptic integral of the first kind, `K(k) = π / (2·AGM(1, k'))`.
pub fn agm_elliptic_k(k: &Real) -> Result<Real> {
    check_unit_interval("modulus k", k)?;
    let p = k.precision();
    let kp = complementary(k);
    Ok(Real::pi(p) / (agm(&Real::one(p), &kp) * 2))
}

/// `k' = √(1 − k²)`.
pub fn complementary(k: &Real) -> Real {
    (Real::one(k.precision()) - k.square()).sqrt()
}

/// `q = exp(−π K(k') / K(k))`.
pub fn nome(k: &Real) -> Result<Real> {
    let big_k = agm_elliptic_k(k)?;
    let big_kp = agm_elliptic_k(&complementary(k))?;
    Ok((-(Real::pi(k.precision()) * &big_kp / &big_k)).exp())
}

/// Inverse of [`nome`] through theta constants, `k = θ₂²(q) / θ₃²(q)`.
pub fn modulus_from_nome(q: &Real) -> Result<Real> {
    check_unit_interval("nome q", q)?;
    let p = q.precision();
    let eps = tiny(q);
    // θ₂ = 2 q^¼ Σ_{n≥0} q^{n(n+1)},  θ₃ = 1 + 2 Σ_{n≥1} q^{n²}
    let mut theta2 = Real::zero(p);
    let mut n: i32 = 0;
    loop {
        let t = q.powi(n * (n + 1));
        let small = t < eps;
        theta2 += t;
        if small {
            break;
        }
        n += 1;
    }
    theta2 = theta2 * q.sqrt().sqrt() * 2;

    let mut theta3 = Real::zero(p);
    let mut n: i32 = 1;
    loop {
        let t = q.powi(n * n);
        let small = t < eps;
        theta3 += t;
        if small {
            break;
        }
        n += 1;
    }
    theta3 = theta3 * 2 + Real::one(p);

    Ok((theta2 / theta3).square())
}
