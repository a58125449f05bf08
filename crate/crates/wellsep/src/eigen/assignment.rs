//! Minimum-cost bijective assignment (Hungarian algorithm with potentials).

/// Solves the square assignment problem for a row-major cost matrix,
/// returning `assign[row] = col`. O(n^3).
pub(crate) fn min_cost_assignment(cost: &[f64], n: usize) -> Vec<usize> {
    assert_eq!(cost.len(), n * n);
    // 1-based with a dummy 0 column, the classic potentials formulation
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1]; // p[j] = row matched to column j
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assign = vec![0usize; n];
    for j in 1..=n {
        if p[j] > 0 {
            assign[p[j] - 1] = j - 1;
        }
    }
    assign
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: minimum total cost over all permutations.
    fn brute_force(cost: &[f64], n: usize) -> f64 {
        fn go(cost: &[f64], n: usize, row: usize, used: &mut [bool], acc: f64, best: &mut f64) {
            if row == n {
                *best = best.min(acc);
                return;
            }
            for col in 0..n {
                if !used[col] {
                    used[col] = true;
                    go(cost, n, row + 1, used, acc + cost[row * n + col], best);
                    used[col] = false;
                }
            }
        }
        let mut best = f64::INFINITY;
        go(cost, n, 0, &mut vec![false; n], 0.0, &mut best);
        best
    }

    fn total(cost: &[f64], n: usize, assign: &[usize]) -> f64 {
        assign.iter().enumerate().map(|(i, &j)| cost[i * n + j]).sum()
    }

    #[test]
    fn identity_cost() {
        let cost = [0.0, 1.0, 1.0, 0.0];
        assert_eq!(min_cost_assignment(&cost, 2), vec![0, 1]);
    }

    #[test]
    fn matches_brute_force_on_fixed_instances() {
        let cases: Vec<(usize, Vec<f64>)> = vec![
            (2, vec![0.1, 0.5, 0.4, 0.9]),
            (3, vec![4.0, 1.0, 3.0, 2.0, 0.0, 5.0, 3.0, 2.0, 2.0]),
            (4, vec![
                9.0, 2.0, 7.0, 8.0, //
                6.0, 4.0, 3.0, 7.0, //
                5.0, 8.0, 1.0, 8.0, //
                7.0, 6.0, 9.0, 4.0,
            ]),
        ];
        for (n, cost) in cases {
            let assign = min_cost_assignment(&cost, n);
            let mut seen = vec![false; n];
            for &j in &assign {
                assert!(!seen[j], "assignment not a bijection");
                seen[j] = true;
            }
            let expect = brute_force(&cost, n);
            assert!((total(&cost, n, &assign) - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn matches_brute_force_on_seeded_random_instances() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in 2..=5 {
            for _ in 0..20 {
                let cost: Vec<f64> = (0..n * n).map(|_| rng.random::<f64>() * 10.0).collect();
                let assign = min_cost_assignment(&cost, n);
                let expect = brute_force(&cost, n);
                assert!(
                    (total(&cost, n, &assign) - expect).abs() < 1e-9,
                    "n={n} hungarian={} brute={expect}",
                    total(&cost, n, &assign)
                );
            }
        }
    }
}
