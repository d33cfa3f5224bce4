//! Derivative-free one-dimensional minimisation (Brent).

use contour_quad::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum<T> {
    pub x: T,
    pub value: T,
    pub evaluations: usize,
}

/// Minimises `f` on `[a, b]` by golden-section search with parabolic steps.
///
/// `tol` is the relative tolerance on the abscissa; values below
/// `sqrt(eps)` are raised to it.
pub fn brent_min<T: Real, E>(mut f: impl FnMut(T) -> Result<T, E>, a: T, b: T, tol: T) -> Result<Extremum<T>, E> {
    let cgold = T::lit(0.381_966_011_250_105_1);
    let eps = T::epsilon().sqrt();
    let tol = tol.max(eps);
    let (mut a, mut b) = if a < b { (a, b) } else { (b, a) };
    let mut x = a + cgold * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = f(x)?;
    let (mut fw, mut fv) = (fx, fx);
    let mut evals = 1;
    let (mut d, mut e) = (T::zero(), T::zero());
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    for _ in 0..500 {
        let m = half * (a + b);
        let tol1 = tol * x.abs() + eps * T::lit(1e-3);
        let tol2 = two * tol1;
        if (x - m).abs() <= tol2 - half * (b - a) {
            break;
        }
        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = two * (q - r);
            if q > T::zero() {
                p = -p;
            } else {
                q = -q;
            }
            let etemp = e;
            e = d;
            if p.abs() < (half * q * etemp).abs() && p > q * (a - x) && p < q * (b - x) {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if m >= x { tol1 } else { -tol1 };
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= m { a - x } else { b - x };
            d = cgold * e;
        }
        let u = if d.abs() >= tol1 { x + d } else if d > T::zero() { x + tol1 } else { x - tol1 };
        let fu = f(u)?;
        evals += 1;
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Ok(Extremum { x, value: fx, evaluations: evals })
}

pub fn brent_max<T: Real, E>(mut f: impl FnMut(T) -> Result<T, E>, a: T, b: T, tol: T) -> Result<Extremum<T>, E> {
    let r = brent_min(|x| f(x).map(|v| -v), a, b, tol)?;
    Ok(Extremum { value: -r.value, ..r })
}

/// Bisection for a sign change of `f` on `[a, b]`.
pub fn bisect<T: Real, E>(mut f: impl FnMut(T) -> Result<T, E>, mut a: T, mut b: T, tol: T) -> Result<T, E> {
    let mut fa = f(a)?;
    for _ in 0..200 {
        let m = T::lit(0.5) * (a + b);
        if (b - a).abs() <= tol || m == a || m == b {
            return Ok(m);
        }
        let fm = f(m)?;
        if fm == T::zero() {
            return Ok(m);
        }
        if (fm < T::zero()) == (fa < T::zero()) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(T::lit(0.5) * (a + b))
}
