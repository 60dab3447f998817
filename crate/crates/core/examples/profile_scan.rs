//! Scan all admissible profiles degree by degree and report their
//! dicritical structure. Usage: cargo run --example profile_scan [max_d]

fn main() {
    let max_d: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(12);
    for d in 1..=max_d {
        let profiles = unicusp::cusp::enumerate_profiles(d);
        println!("degree {}: {} admissible profiles", d, profiles.len());
        for p in &profiles {
            let plan = unicusp::plan(p).expect("admissible");
            let rep = unicusp::dicriticals(&plan).expect("engine-consistent");
            println!(
                "  {:?}  nu={}  m={}  dicriticals {:?} degrees {:?}{}",
                p.minseq.entries(),
                p.nu_tilde(),
                plan.m,
                rep.horizontal,
                rep.degrees,
                if rep.section_index.is_some() { "  (section)" } else { "" },
            );
        }
    }
}
