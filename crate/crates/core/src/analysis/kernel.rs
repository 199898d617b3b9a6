use crate::error::{Error, Result};

/// A sample of the Simpson error kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPoint {
    pub t: f64,
    pub value: f64,
}

impl KernelPoint {
    pub fn at(t: f64) -> Result<Self> {
        Ok(Self {
            t,
            value: kernel_p(t)?,
        })
    }
}

/// The piecewise cubic kernel whose integral against `f'''(ta + (1-t)b)`
/// gives the Simpson error:
///
/// `p(t) = t²(t - 1/2)/6` on `[0, 1/2]` and `(t-1)²(t - 1/2)/6` on `(1/2, 1]`.
pub fn kernel_p(t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain {
            name: "t",
            value: t,
            expected: "[0, 1]",
        });
    }
    let u = if t <= 0.5 { t } else { t - 1.0 };
    Ok(u * u * (t - 0.5) / 6.0)
}
