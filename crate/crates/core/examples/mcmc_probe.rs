use lumopt::calibration::*;
use lumopt::degradation::GammaDegradationModel;

fn main() {
    let truth = GammaDegradationModel::new(2.2393, 0.8841, 3.7446, 0.0815).unwrap();
    let truth_vec = [2.2393, 0.8841, 3.7446, 0.0815];
    let temps = [328.15, 358.15, 378.15];
    for rep in 0..3u64 {
        let data = synth_lm80(&truth, &temps, 25, 1000.0, 10_000.0, 100 + rep).unwrap();
        let opts = McmcOptions { chains: 2, warmup: 1000, samples: 1000, ..Default::default() };
        let t0 = std::time::Instant::now();
        let s = run_mcmc(&data, &PriorSpec::default(), &opts, 200 + rep).unwrap();
        println!("rep {rep}  accept {:?}  rhat {:?}  ({:.2?})", s.accept_rates, s.rhat, t0.elapsed());
        let m = s.mean();
        for p in 0..4 {
            let (lo, hi) = s.credible_interval(p, 0.95);
            let inside = truth_vec[p] >= lo && truth_vec[p] <= hi;
            println!("  {:6} truth {:8.4}  mean {:8.4}  CrI [{:8.4}, {:8.4}]  in: {}", PARAM_NAMES[p], truth_vec[p], m[p], lo, hi, inside);
        }
    }
}
