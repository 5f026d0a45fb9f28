use mra_seed::catalog::{run_example, run_example7_member};
use mra_seed::seqtools::classify_decay;
use std::time::Instant;

fn main() {
    for k in 0usize..=20 {
        let t = Instant::now();
        let (_, run, rep) = run_example7_member(k).unwrap();
        println!(
            "k={k:2} ({:>6.2?}): r1 {:.2e}, weights {}, min {:.3e}",
            t.elapsed(),
            rep.r1.max_residual,
            classify_decay(&run.weights.values).label(),
            run.series.min_value
        );
    }
    let t = Instant::now();
    let ex9 = run_example(9).unwrap();
    println!(
        "ex9 ({:?}): r1 {:.2e}, weights {}, filter {}",
        t.elapsed(),
        ex9.report.r1.max_residual,
        ex9.report.weight_class.label(),
        ex9.report.r2.class.label()
    );
}
