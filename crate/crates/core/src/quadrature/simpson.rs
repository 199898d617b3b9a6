use super::Integrand;
use crate::error::Result;
use crate::inequality::Interval;

/// `((b-a)/6) (f(a) + 4 f((a+b)/2) + f(b))`.
pub fn simpson(f: &Integrand, iv: &Interval) -> Result<f64> {
    let fa = f.eval(iv.a())?;
    let fm = f.eval(iv.midpoint())?;
    let fb = f.eval(iv.b())?;
    Ok(iv.width() / 6.0 * (fa + 4.0 * fm + fb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn unit() -> Interval {
        Interval::new(0.0, 1.0).unwrap()
    }

    #[test]
    fn exact_on_low_degree() {
        assert_relative_eq!(
            simpson(&Integrand::new("x^2", |x| x * x), &unit()).unwrap(),
            1.0 / 3.0
        );
        assert_relative_eq!(
            simpson(&Integrand::new("x^3", |x| x.powi(3)), &unit()).unwrap(),
            0.25
        );
    }

    #[test]
    fn quartic_error_is_one_over_120() {
        let v = simpson(&Integrand::new("x^4", |x| x.powi(4)), &unit()).unwrap();
        assert_relative_eq!(v, 5.0 / 24.0, max_relative = 1e-15);
        assert_relative_eq!(v - 0.2, 1.0 / 120.0, max_relative = 1e-14);
    }

    #[test]
    fn reports_offending_abscissa() {
        let f = Integrand::new("1/(x-0.5)", |x| 1.0 / (x - 0.5));
        match simpson(&f, &unit()) {
            Err(Error::NonFinite { x, .. }) => assert_eq!(x, 0.5),
            other => panic!("unexpected {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn exact_on_random_cubics(
            c in proptest::array::uniform4(-10.0f64..10.0),
            a in -3.0f64..3.0,
            w in 0.01f64..4.0,
        ) {
            let iv = Interval::new(a, a + w).unwrap();
            let f = Integrand::new("cubic", move |x| ((c[3] * x + c[2]) * x + c[1]) * x + c[0]);
            let anti = |x: f64| ((c[3] / 4.0 * x + c[2] / 3.0) * x + c[1] / 2.0) * x * x + c[0] * x;
            let exact = anti(iv.b()) - anti(iv.a());
            let got = simpson(&f, &iv).unwrap();
            // relative to the magnitude of the terms that cancel in the antiderivative
            let scale = anti(iv.b()).abs() + anti(iv.a()).abs() + exact.abs();
            prop_assert!((got - exact).abs() <= 1e-14 * scale.max(1e-300) * 8.0);
        }
    }
}
