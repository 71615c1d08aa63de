use lumopt::calibration::*;

fn main() {
    // Empty data: posterior == prior. Compare sampled e_a quantiles to the
    // half-normal quantiles.
    let prior = PriorSpec { ln_a_sd: 0.5, ln_c_sd: 0.5, b_scale: 0.7, e_a_scale: 0.08 };
    let opts = McmcOptions { chains: 4, warmup: 2000, samples: 5000, ..Default::default() };
    let s = run_mcmc(&AdtDataset::empty(), &prior, &opts, 17).unwrap();
    println!("accept {:?} rhat {:?}", s.accept_rates, s.rhat);
    let ea = s.parameter(3);
    let b = s.parameter(1);
    // half-normal quantile: scale * Phi^-1((1+p)/2) ... use erf inverse via search
    let hn_q = |scale: f64, p: f64| {
        let mut lo = 0.0; let mut hi = scale * 6.0;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            let cdf = lumopt::special::erf(mid / (scale * std::f64::consts::SQRT_2));
            if cdf < p { lo = mid; } else { hi = mid; }
        }
        0.5 * (lo + hi)
    };
    for &p in &[0.05, 0.25, 0.5, 0.75, 0.95] {
        let mut v = ea.clone(); v.sort_by(|a,b| a.partial_cmp(b).unwrap());
        let emp = v[(p * v.len() as f64) as usize];
        println!("e_a q{p}: sampled {emp:.5} vs prior {:.5}", hn_q(0.08, p));
    }
    for &p in &[0.05, 0.5, 0.95] {
        let mut v = b.clone(); v.sort_by(|a,b| a.partial_cmp(b).unwrap());
        let emp = v[(p * v.len() as f64) as usize];
        println!("b   q{p}: sampled {emp:.5} vs prior {:.5}", hn_q(0.7, p));
    }
}
