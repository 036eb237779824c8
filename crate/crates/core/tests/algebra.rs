use symquiver_core::algebra::{dimension_table, gr_linking_check, homology_check, oracle_check, Algebra};
use symquiver_core::quiver::fleet;
use symquiver_core::Conventions;

#[test]
fn oracle_beyond_required_range() {
    let conv = Conventions::default();
    for q in [fleet::one_loop(1), fleet::one_loop(3), fleet::two_vertex(1, 2, 2), fleet::mixed_three()] {
        let r = oracle_check(&q, 3, 14, &conv);
        assert!(r.pass, "{q}: {:?}", &r.mismatches[..r.mismatches.len().min(3)]);
    }
}

#[test]
fn oracle_ranges_are_not_vacuous() {
    for q in [fleet::one_loop(3), fleet::two_vertex(1, 2, 2)] {
        let rows = dimension_table(&Algebra::new(&q), 3, 8);
        let nonzero = rows.iter().filter(|r| r.d.iter().sum::<u32>() >= 2 && r.dim_rank > 0).count();
        let biggest = rows.iter().map(|r| r.dim_rank).max().unwrap();
        eprintln!("{:?}: {nonzero} nonzero components with |d| ≥ 2, largest {biggest}", q.matrix());
        assert!(nonzero >= 5);
    }
}

#[test]
fn homology_and_gr_one_step_further() {
    let conv = Conventions::default();
    for q in [fleet::doubled_a2(), fleet::double_edge(), fleet::two_vertex(1, 2, 2)] {
        let h = homology_check(&q, "a", "b", 4, 8, &conv).unwrap();
        assert!(h.pass, "{q}: {:?}", &h.mismatches[..h.mismatches.len().min(3)]);
        eprintln!("{:?}: {}", q.matrix(), serde_json::to_string(&h.details).unwrap());
        let g = gr_linking_check(&q, "a", "b", 4, 10, true, &conv).unwrap();
        assert!(g.pass, "{q}: {:?}", &g.mismatches[..g.mismatches.len().min(3)]);
    }
}
