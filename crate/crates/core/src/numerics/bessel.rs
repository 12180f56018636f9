/// Bessel functions of the first kind `J_0(x) ..= J_n(x)` for `x ≥ 0`, by
/// Miller's backward recurrence normalized with `J_0 + 2 Σ J_2k = 1`.
pub fn bessel_j_sequence(x: f64, n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let x = x.abs();
    let top = (n as f64).max(x);
    let mut start = (top + 30.0 + 6.0 * top.cbrt()).ceil() as usize;
    start += start % 2;
    let mut j = vec![0.0; start + 2];
    j[start] = 1e-30;
    for k in (1..=start).rev() {
        j[k - 1] = 2.0 * k as f64 / x * j[k] - j[k + 1];
        if j[k - 1].abs() > 1e250 {
            for v in j[k - 1..].iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    let norm = j[0] + 2.0 * j.iter().skip(2).step_by(2).sum::<f64>();
    for (o, v) in out.iter_mut().zip(&j) {
        *o = v / norm;
    }
    out
}
