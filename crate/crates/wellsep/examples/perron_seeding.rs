//! Warm-starting the power method on a positive matrix: a start vector built
//! from the shifted diagonal usually beats a random one.

use wellsep::{compare_starts, gen_perron_test, perron_seed, power_method, random_start};

use rand::SeedableRng;

fn main() {
    let n = 40;

    // one matrix in detail
    let a = gen_perron_test(n, 1).expect("n >= 1");
    let k = 2.0 * n as f64; // twice the largest diagonal entry
    let seeded = perron_seed(&a, k).expect("shift avoids the diagonal");
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    let random = random_start(n, &mut rng);

    let tol = 1e-8;
    let t_seed = power_method(&a, &seeded, tol, 10_000).expect("real square matrix");
    let t_rand = power_method(&a, &random, tol, 10_000).expect("real square matrix");
    println!(
        "single run: random start {} iterations, seeded start {} iterations",
        t_rand.iterations, t_seed.iterations
    );
    println!(
        "dominant value agrees: {:.10} vs {:.10}",
        t_rand.dominant_value, t_seed.dominant_value
    );

    // and the aggregate picture over many trials
    let summary = compare_starts(n, 25, k, tol, 10_000, 42).expect("at least one trial");
    println!(
        "\n25 trials: mean iterations random {:.2} / seeded {:.2}, mean saving {:.2}",
        summary.mean_random, summary.mean_seeded, summary.mean_saving
    );
    println!(
        "medians: random {:.1} / seeded {:.1} ({} trials excluded for non-convergence)",
        summary.median_random, summary.median_seeded, summary.excluded_trials
    );

    let (_, first) = &summary.traces[0];
    println!("\nresidual trace of the first random run (one line per iteration):");
    for (it, r) in first.error_log.iter().take(6).enumerate() {
        println!("  iteration {:>2}: residual {r:.3e}", it + 1);
    }
}
