#![allow(dead_code)]

use sunflower_interval::generators::{gen_random_any, RandomParams, Spread};
use sunflower_interval::SunflowerInstance;

/// Seeded instances with at most eight vertices in total and up to three
/// graphs, each graph using the whole budget.
pub fn small_family(count: usize) -> Vec<SunflowerInstance> {
    (0..count as u64).map(small_instance).collect()
}

pub fn small_instance(seed: u64) -> SunflowerInstance {
    let k = 1 + (seed % 3) as usize;
    let shared = 1 + (seed / 3 % 4) as usize;
    let private_per_graph = (8 - shared) / k;
    let extra_edges = (seed / 12 % 4) as usize;
    gen_random_any(seed, RandomParams { spread: Spread::Wide, ..RandomParams::new(shared, private_per_graph, k, extra_edges) })
}

/// Each graph laid out on its own as unit intervals, with the shared
/// vertices in one common order but at graph-specific distances: proper
/// representable by construction, unit representable only sometimes.
pub fn proper_family(count: usize) -> Vec<SunflowerInstance> {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use sunflower_interval::Graph;

    (0..count as u64)
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let k = rng.gen_range(2..=3);
            let shared = rng.gen_range(2..=3);
            let mut counts = vec![0usize; k];
            for _ in 0..12 - shared {
                counts[rng.gen_range(0..k)] += 1;
            }
            let offsets: Vec<usize> = counts.iter().scan(shared, |acc, &c| { let o = *acc; *acc += c; Some(o) }).collect();
            let touching: Vec<bool> = (1..shared).map(|_| rng.gen_bool(0.3)).collect();
            let name = |v: usize| if v < shared { format!("s{v}") } else { format!("p{v}") };
            let graphs: Vec<Graph> = (0..k)
                .map(|i| {
                    // Left ends in quarters; intervals have length 4.
                    // Wide enough gaps to keep the privates connected, mostly.
                    let widest = (4 * (counts[i] as i64 + 1) - 8) / (shared as i64 - 1).max(1) + 1;
                    let mut left = vec![0i64];
                    for &t in &touching {
                        let gap = if t { rng.gen_range(1..=4) } else { rng.gen_range(5..=widest.max(5)) };
                        left.push(left.last().unwrap() + gap);
                    }
                    let end = *left.last().unwrap();
                    let mut vs: Vec<usize> = (0..shared).collect();
                    // Privates spread evenly over the shared span, with jitter.
                    let private = counts[i];
                    for p in 0..private {
                        vs.push(offsets[i] + p);
                        let even = (end + 8) * (p as i64 + 1) / (private as i64 + 1) - 4;
                        left.push(even + rng.gen_range(-1..=1));
                    }
                    let names: Vec<String> = vs.iter().map(|&v| name(v)).collect();
                    let mut edges = Vec::new();
                    for a in 0..vs.len() {
                        for b in a + 1..vs.len() {
                            if (left[a] - left[b]).abs() <= 4 {
                                edges.push((names[a].clone(), names[b].clone()));
                            }
                        }
                    }
                    Graph::build(&names, &edges).unwrap()
                })
                .collect();
            let shared_names: Vec<String> = (0..shared).map(name).collect();
            let shared_edges: Vec<(String, String)> = (1..shared)
                .filter(|&b| touching[b - 1])
                .map(|b| (name(b - 1), name(b)))
                .collect();
            SunflowerInstance::new(graphs, shared_names, shared_edges)
        })
        .collect()
}

pub fn mixed_family(count: usize) -> Vec<SunflowerInstance> {
    let mut all = small_family(count / 2);
    all.extend(proper_family(count - count / 2));
    all
}
