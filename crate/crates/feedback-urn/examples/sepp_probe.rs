// temporary probe
use feedback_urn::correction::CorrectionMode;
use feedback_urn::sim::*;
use feedback_urn::stats::{iqr, median, quantile};
use std::time::Instant;

fn regions(priors: (f64, f64), rates: (f64, f64)) -> Vec<RegionCfg> {
    vec![
        RegionCfg { label: "Top1".into(), prior_mass: priors.0, rate: rates.0 },
        RegionCfg { label: "Other".into(), prior_mass: priors.1, rate: rates.1 },
    ]
}

fn main() {
    for (scen, priors, rates, lstar) in [
        ("top2", (609.0, 379.0), (3.69, 2.82), 3.69 / 6.51),
        ("random", (609.0, 7.0), (3.69, 2.36), 3.69 / 6.05),
    ] {
        for (name, corr) in [
            ("unc", CorrectionMode::None),
            ("cor", CorrectionMode::DiscoveredRejection),
        ] {
            let cfg = ScenarioConfig::sepp(
                format!("{scen}-{name}"),
                regions(priors, rates),
                IncidentMode::DiscoveredOnly,
                corr,
                365,
                300,
                180,
                101,
            );
            let t0 = Instant::now();
            let log = run_sepp_scenario(&cfg).unwrap();
            let term = log.terminal_values();
            println!(
                "{scen}-{name}: median={:.4} iqr={:.4} q10={:.3} q90={:.3} lambda*={lstar:.4} ({:.0}s)",
                median(&term),
                iqr(&term),
                quantile(&term, 0.1),
                quantile(&term, 0.9),
                t0.elapsed().as_secs_f64()
            );
        }
    }
}
