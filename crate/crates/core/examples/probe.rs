use wrev_core::flows::{run, FlowKind, RunConfig};
use wrev_core::stationary::circle_profile;
use wrev_core::Curve;
fn main() {
    let curve: Curve = circle_profile(1, 0.5, 512).unwrap();
    let cfg = RunConfig { t_end: 1.0, log_every: 10, ..RunConfig::default() };
    let start = std::time::Instant::now();
    let out = run(&curve, FlowKind::ConstrainedWillmore, &cfg).unwrap();
    println!("status {:?} accepted {} rejected {} wall {:.2}s",
        out.state.status, out.state.accepted_steps, out.state.rejected_steps, start.elapsed().as_secs_f64());
    for row in out.series.iter().take(12) {
        println!("t={:.3e} dt={:.3e} grad={:.3e} E={:.8}", row.t, row.dt, row.gradnorm, row.e);
    }
}
