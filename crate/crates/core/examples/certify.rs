use isoparam_core::algebra::Epsilon;
use isoparam_core::elimination::run_certification;

fn main() {
    for eps in Epsilon::BOTH {
        let start = std::time::Instant::now();
        let trace = run_certification(eps);
        println!("eps={} certified={} first_failure={:?} ({:.1?})", eps.value(), trace.certified, trace.first_failure, start.elapsed());
        for (s, c) in trace.checks() {
            if !c.pass {
                println!("  FAIL {s}/{}: {}", c.name, &c.witness[..c.witness.len().min(300)]);
            }
        }
    }
}
