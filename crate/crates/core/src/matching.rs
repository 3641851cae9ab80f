//! Maximum-weight matching value on small dense graphs.

/// Exact up to this many vertices (subset DP over 2^n states).
pub const EXACT_MATCHING_LIMIT: usize = 20;

/// Total weight of a maximum-weight matching on vertices `0..n`, where
/// `weight(i, j)` is the nonnegative weight of edge `{i, j}` or `None`.
///
/// For more than [`EXACT_MATCHING_LIMIT`] vertices the result is the
/// upper bound `floor(sum_v max_incident(v) / 2)` instead.
pub fn max_weight_matching_value(n: usize, weight: impl Fn(usize, usize) -> Option<u64>) -> u64 {
    if n < 2 {
        return 0;
    }
    let w: Vec<Vec<Option<u64>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        None
                    } else {
                        weight(i.min(j), i.max(j))
                    }
                })
                .collect()
        })
        .collect();
    if n > EXACT_MATCHING_LIMIT {
        let total: u64 = w
            .iter()
            .map(|row| row.iter().flatten().copied().max().unwrap_or(0))
            .sum();
        return total / 2;
    }
    let mut best = vec![0u64; 1 << n];
    for mask in 1usize..(1 << n) {
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut v = best[rest];
        let mut others = rest;
        while others != 0 {
            let j = others.trailing_zeros() as usize;
            others &= others - 1;
            if let Some(x) = w[i][j] {
                v = v.max(x + best[rest & !(1 << j)]);
            }
        }
        best[mask] = v;
    }
    best[(1 << n) - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(n: usize, w: &dyn Fn(usize, usize) -> Option<u64>, used: &mut Vec<bool>) -> u64 {
        let Some(i) = (0..n).find(|&i| !used[i]) else {
            return 0;
        };
        used[i] = true;
        let mut best = brute(n, w, used);
        for j in 0..n {
            if !used[j] {
                if let Some(x) = w(i.min(j), i.max(j)) {
                    used[j] = true;
                    best = best.max(x + brute(n, w, used));
                    used[j] = false;
                }
            }
        }
        used[i] = false;
        best
    }

    #[test]
    fn matches_brute_force() {
        for seed in 0u64..40 {
            let n = (seed % 8) as usize;
            let w = move |i: usize, j: usize| {
                let h = (i as u64 * 31 + j as u64 * 17 + seed * 7) % 11;
                (!h.is_multiple_of(4)).then_some(h)
            };
            assert_eq!(
                max_weight_matching_value(n, w),
                brute(n, &w, &mut vec![false; n]),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn large_graphs_fall_back_to_an_upper_bound() {
        let n = EXACT_MATCHING_LIMIT + 2;
        let v = max_weight_matching_value(n, |_, _| Some(3));
        assert!(v >= 3 * (n as u64 / 2));
    }

    #[test]
    fn trivial() {
        assert_eq!(max_weight_matching_value(0, |_, _| Some(1)), 0);
        assert_eq!(max_weight_matching_value(2, |_, _| Some(5)), 5);
        assert_eq!(max_weight_matching_value(3, |i, j| Some((i + j) as u64)), 3);
    }
}
