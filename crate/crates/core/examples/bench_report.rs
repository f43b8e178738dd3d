// A small latency sweep over Karatsuba depths, printed as a table and CSV.

use bike_codesign::bench::{
    render_table, run_plan, to_csv, BenchConfig, BenchMode, BenchPlan, KemPrimitive,
};
use bike_codesign::DecoderVariant;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn main() {
    let plan = BenchPlan {
        primitives: KemPrimitive::ALL.to_vec(),
        configs: [0, 2, 3]
            .into_iter()
            .map(|d| BenchConfig {
                karatsuba_depth: d,
                decoder: DecoderVariant::Bgf,
            })
            .collect(),
        repetitions: 3,
        mode: BenchMode::Serial,
    };
    let rows = run_plan(&plan, &mut ChaCha20Rng::seed_from_u64(0)).unwrap();
    print!("{}", render_table(&rows));
    println!();
    print!("{}", to_csv(&rows).unwrap());
}
