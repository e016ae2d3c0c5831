//! Expression corpus shared by the parser tests and the acceptance run.

use std::sync::Arc;

use toroidal_cli::parse::parse_ring;
use toroidal_core::RingSpec;

/// Rings the corpus entries are parsed over, by index.
pub fn rings() -> Vec<Arc<RingSpec>> {
    ["laurent:t", "laurent:x,t", "laurent:x,y,t;t=t", "laurent:t;poly:u", "laurent:a,b"]
        .iter()
        .map(|s| parse_ring(s).unwrap())
        .collect()
}

pub const CORPUS: &[(usize, &str)] = &[
    (0, "0"),
    (0, "1"),
    (0, "-3/4"),
    (0, "t"),
    (0, "t^-5 + 2*t^3"),
    (0, "1/2*t^2 - t^-2 + 7"),
    (0, "dt"),
    (0, "t^-1*dt"),
    (0, "k0"),
    (0, "d(t^3)"),
    (0, "t^2*dt - 3*t^-4*dt"),
    (0, "J[e]"),
    (0, "J[e]*t^-1 + J[f]*t"),
    (0, "2*J[h]*t^3 - 1/3*J[e]"),
    (0, "J[e]*t + t^-1*dt"),
    (0, "J[f]*t^-2 - 5*t^-1*dt"),
    (0, "t*J[h]"),
    (0, "-J[e] - J[f]"),
    (1, "x"),
    (1, "x*t + x^-1*t^-1"),
    (1, "x^2*t^-3 - 1"),
    (1, "dx"),
    (1, "x^-1*dx + t^-1*dt"),
    (1, "k0 + k1"),
    (1, "d(x*t)"),
    (1, "d(x^2*t^-1) + x*dt"),
    (1, "x^3*t^-2*dx"),
    (1, "J[e]*x*t^-1"),
    (1, "J[h]*x^-2 + 3*J[e]*t"),
    (1, "J[f]*x*t - x^-1*dx"),
    (1, "1/2*J[e]*x + 1/2*J[f]*x^-1 + t^-1*dt"),
    (2, "x*y"),
    (2, "x^-1*y^2*t"),
    (2, "dx + dy + dt"),
    (2, "y*dx - x*dy"),
    (2, "x^-1*y^-1*t^-1*dt"),
    (2, "d(x*y*t)"),
    (2, "J[e]*x*y*t^-1 + J[f]*y^-1"),
    (2, "J[h]*t^2 + x*y^-1*dx"),
    (3, "u^3 + t^-1"),
    (3, "u*dt + t*du"),
    (3, "d(u^2*t)"),
    (3, "J[e]*u^2*t^-1"),
    (3, "J[f]*u - t^-1*dt"),
    (4, "a^-1*b"),
    (4, "a^-1*da"),
    (4, "b^-1*db - a^-1*da"),
    (4, "J[e]*a*b^-1"),
    (4, "J[h]*a^2 + 2*a^-1*da"),
    (4, "3/7*b^-2*da + 2/7*a*db"),
];
