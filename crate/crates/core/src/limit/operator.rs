use crate::analytic::beta_exp;

/// One level of the limit recursion: the split point `(x, y)` cuts the unit
/// square into SW, NW, SE, NE boxes and `fs` are the processes living in
/// them, in that order. Queries with `s == x` belong to the east side.
pub fn apply_g(x: f64, y: f64, fs: [&dyn Fn(f64) -> f64; 4], s: f64) -> f64 {
    let b = beta_exp();
    if s < x {
        let t = s / x;
        (x * y).powf(b) * fs[0](t) + (x * (1.0 - y)).powf(b) * fs[1](t)
    } else {
        let t = (s - x) / (1.0 - x);
        ((1.0 - x) * y).powf(b) * fs[2](t) + ((1.0 - x) * (1.0 - y)).powf(b) * fs[3](t)
    }
}
