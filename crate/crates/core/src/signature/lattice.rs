use rayon::prelude::*;

/// Direct count over the box `0 < x_i < a_i`: points with fractional sum in
/// `(0,1)` mod 2 minus points in `(1,2)`. Boundary points count in neither.
///
/// The sum is tracked as the integer `S = sum x_i (N / a_i)` mod `2N`.
pub(crate) fn lattice_count(exponents: &[u64], degree: u64) -> i128 {
    let modulus = 2 * degree;
    let steps: Vec<u64> = exponents.iter().map(|&a| degree / a).collect();
    let (first, rest) = exponents.split_first().expect("nonempty exponents");
    let rest: Vec<(u64, u64)> = rest
        .iter()
        .copied()
        .zip(steps[1..].iter().copied())
        .collect();
    (1..*first)
        .into_par_iter()
        .map(|x0| {
            let start = (x0 * steps[0] + rest.iter().map(|&(_, s)| s).sum::<u64>()) % modulus;
            count_slab(start, &rest, degree, modulus)
        })
        .sum()
}

/// Odometer over the remaining coordinates, starting from all ones.
fn count_slab(start: u64, rest: &[(u64, u64)], degree: u64, modulus: u64) -> i128 {
    let mut x = vec![1u64; rest.len()];
    let mut s = start;
    let mut total: i128 = 0;
    loop {
        if s != 0 && s != degree {
            total += if s < degree { 1 } else { -1 };
        }
        let mut i = 0;
        loop {
            if i == rest.len() {
                return total;
            }
            let (a, step) = rest[i];
            if x[i] + 1 < a {
                x[i] += 1;
                s = (s + step) % modulus;
                break;
            }
            // wrap coordinate i from a-1 back to 1
            let back = ((a - 2) * step) % modulus;
            s = (s + modulus - back) % modulus;
            x[i] = 1;
            i += 1;
        }
    }
}
