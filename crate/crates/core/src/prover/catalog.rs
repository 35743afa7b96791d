//! Closed-form solution points `(u0, v0)` of the self-complementary system
//! `w(u) = w(v), P(u, v) = 0` for each supported degree.

use crate::data::DEGREES;
use crate::error::{Error, Result};
use crate::modeq::WMapForm;

use super::radical::RadicalExpr as R;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionPoint {
    pub d: u32,
    pub form: WMapForm,
    pub u0: R,
    pub v0: R,
}

fn q(n: i64, d: i64) -> R {
    R::frac(n, d)
}

fn s(n: i64) -> R {
    R::sqrt_int(n)
}

/// `(c2 H^2 + c1 H + c0)` where `H = cbrt(h0 + h1 sqrt(h2))`.
struct Cubic {
    h: R,
}

impl Cubic {
    fn new(h0: i64, h1: i64, h2: i64) -> Cubic {
        Cubic { h: (R::int(h0) + R::int(h1) * s(h2)).cbrt() }
    }

    fn poly(&self, c2: R, c1: R, c0: R) -> R {
        c2 * self.h.clone().square() + c1 * self.h.clone() + c0
    }

    fn h(&self) -> R {
        self.h.clone()
    }
}

/// The catalog point for degree `d` (one of 5, 7, 11, 17, 41).
pub fn solution_catalog(d: u32) -> Result<SolutionPoint> {
    if !DEGREES.contains(&d) {
        return Err(Error::UnsupportedDegree(d));
    }
    let i = R::i;
    let sqrt3_6 = || s(3) / R::int(6);
    let (u0, v0) = match d {
        5 => {
            let c = Cubic::new(1, 3, 57);
            let u0 = c.poly(q(-1, 192) + s(57) / R::int(64), q(-1, 3), q(2, 3));
            let re = c.poly(q(1, 384) - s(57) / R::int(128), q(1, 6), q(2, 3));
            let im = (s(3) / R::int(384) - s(171) / R::int(128)) * c.h().square() - sqrt3_6() * c.h();
            (u0, re - im * i())
        }
        7 => {
            let c2 = R::int(2).cbrt();
            let c4 = R::int(4).cbrt();
            let u0 = R::int(2).cbrt().sqrt() * (c2.clone() - R::int(1)).cbrt();
            let re = (c4.clone() + R::int(1)) / R::int(2);
            let im = sqrt3_6() * (R::int(1) + c4 + R::int(2) * c2);
            (u0.clone(), u0 * (re - im * i()))
        }
        11 => {
            let c = Cubic::new(35, 3, 129);
            let u0 = c.poly(q(-35, 48) + s(129) / R::int(16), q(-1, 3), q(4, 3));
            let re = c.poly(q(35, 96) - s(129) / R::int(32), q(1, 6), q(4, 3));
            let im = (R::int(-35) * s(3) / R::int(96) + R::int(3) * s(43) / R::int(32)) * c.h().square()
                + sqrt3_6() * c.h();
            (u0, re + im * i())
        }
        17 => {
            let c = Cubic::new(91, 9, 201);
            let u0 = c.poly(q(91, 1200) - R::int(3) * s(201) / R::int(400), q(1, 3), q(-2, 3));
            let re = c.poly(R::int(3) * s(201) / R::int(800) - q(91, 2400), q(-1, 6), q(-2, 3));
            let im = (R::int(-9) * s(67) / R::int(800) + R::int(91) * s(3) / R::int(2400)) * c.h().square()
                - sqrt3_6() * c.h();
            (u0, re + im * i())
        }
        41 => {
            let c = Cubic::new(467, 33, 489);
            let u0 = c.poly(q(-467, 13872) + R::int(11) * s(489) / R::int(4624), q(-1, 3), q(4, 3));
            let re = c.poly(q(467, 27744) - R::int(11) * s(489) / R::int(9248), q(1, 6), q(4, 3));
            let im = (R::int(467) * s(3) / R::int(27744) - R::int(33) * s(163) / R::int(9248)) * c.h().square()
                - sqrt3_6() * c.h();
            (u0, re + im * i())
        }
        _ => unreachable!(),
    };
    let form = if d == 7 { WMapForm::E24 } else { WMapForm::E12 };
    Ok(SolutionPoint { d, form, u0, v0 })
}

/// The `H` cube root used by the catalog entry for `d`, if any.
pub fn catalog_h(d: u32) -> Option<R> {
    let (a, b, c) = match d {
        5 => (1, 3, 57),
        11 => (35, 3, 129),
        17 => (91, 9, 201),
        41 => (467, 33, 489),
        _ => return None,
    };
    Some(Cubic::new(a, b, c).h())
}
