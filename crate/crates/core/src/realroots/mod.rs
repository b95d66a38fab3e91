//! Certified real roots of integer polynomials.
//!
//! Root counts come from Sturm sequences evaluated at exact rational points;
//! enclosures are narrowed by bisection with exact sign evaluation. The
//! floating-point Lambert W function is only used to seed searches and to
//! report asymptotic estimates.

pub(crate) mod isolate;
mod lambert;
mod star;
mod sturm;

use serde::{Deserialize, Serialize};

pub use isolate::{isolate_real_roots, refine_excluding};
pub use lambert::lambert_w;
pub use star::{
    star_domination_root, star_gap_csv, star_gap_report, star_polynomial, star_root,
    star_root_estimate, star_sign, StarGapRecord,
};
pub use sturm::{count_roots_in, SturmChain};

use crate::rational::{Rational, RationalInterval};

/// How an enclosure was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Certification {
    /// The polynomial itself changes sign across the interval, and a Sturm
    /// count (or a uniqueness argument) shows the root is the only one.
    #[serde(rename = "simple-certified")]
    SimpleCertified,
    /// Even multiplicity: only the square-free part changes sign; the Sturm
    /// count over the interval is one.
    #[serde(rename = "sturm-counted")]
    SturmCounted,
    /// Degenerate interval at an exact rational root.
    #[serde(rename = "exact")]
    Exact,
}

impl Certification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Certification::SimpleCertified => "simple-certified",
            Certification::SturmCounted => "sturm-counted",
            Certification::Exact => "exact",
        }
    }
}

/// An interval with exact endpoints that contains exactly one distinct real
/// root.
///
/// `sign_lo`/`sign_hi` are the signs at the endpoints of the polynomial the
/// enclosure was certified against: the polynomial itself for
/// [`Certification::SimpleCertified`], its square-free part for
/// [`Certification::SturmCounted`], and zero for exact roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootEnclosure {
    pub interval: RationalInterval,
    pub sign_lo: i8,
    pub sign_hi: i8,
    pub certification: Certification,
}

impl RootEnclosure {
    pub fn exact(x: Rational) -> Self {
        RootEnclosure {
            interval: RationalInterval::point(x),
            sign_lo: 0,
            sign_hi: 0,
            certification: Certification::Exact,
        }
    }

    pub fn lo(&self) -> &Rational {
        self.interval.lo()
    }

    pub fn hi(&self) -> &Rational {
        self.interval.hi()
    }

    pub fn is_exact(&self) -> bool {
        self.certification == Certification::Exact
    }

    pub fn midpoint_f64(&self) -> f64 {
        crate::rational::to_f64(&self.interval.midpoint())
    }

    /// Reflects the enclosure through zero, as for the substitution
    /// `x -> -x` when the polynomial picks up the sign factor `flip`.
    pub fn negated(&self, flip: i8) -> RootEnclosure {
        RootEnclosure {
            interval: RationalInterval::new(-self.hi(), -self.lo()).unwrap(),
            sign_lo: self.sign_hi * flip,
            sign_hi: self.sign_lo * flip,
            certification: self.certification,
        }
    }
}
