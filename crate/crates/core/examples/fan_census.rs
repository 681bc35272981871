//! Builds the fan on products of lossy calls for four gossipers and prints
//! its statistics with timings.

use std::time::Instant;

use lossy_gossip::fan::{closure_sample_check, enumerate_spans, orbit_classify, GossipFan};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = Instant::now();
    let census = enumerate_spans(4, 6)?;
    let cones: usize = census.spans.iter().map(|s| s.cones.len()).sum();
    println!("spans {} from {} schemes and {cones} cones ({:?})", census.spans.len(), census.schemes_examined, t.elapsed());
    println!("orbit sizes {:?}", orbit_classify(&census, false)?.distribution);
    println!("orbits with transposition {}", orbit_classify(&census, true)?.orbits.len());
    let t = Instant::now();
    let fan = GossipFan::from_census(&census)?;
    println!(
        "fan {} f-vector {:?} pure {} connected {} ({:?})",
        fan.check.is_fan,
        fan.check.f_vector,
        fan.is_pure,
        fan.codim1_connected,
        t.elapsed()
    );
    let t = Instant::now();
    let r = closure_sample_check(&fan, 1000, 1)?;
    println!("escapes {} in {} trials ({:?})", r.escapes, r.trials, t.elapsed());
    Ok(())
}
