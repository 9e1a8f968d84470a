//! Exact rationals used for heights, divisor coefficients and lattice norms.

use num_rational::Ratio;

pub type Rat = Ratio<i64>;

pub fn rat(n: i64, d: i64) -> Rat {
    Ratio::new(n, d)
}

pub fn int(n: i64) -> Rat {
    Ratio::from_integer(n)
}

pub fn floor(r: Rat) -> i64 {
    r.floor().to_integer()
}

pub fn ceil(r: Rat) -> i64 {
    r.ceil().to_integer()
}
