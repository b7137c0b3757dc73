use std::time::Instant;
use twisthom::complexes::GroupTable;
use twisthom::theorems::{twisted_nerve_complex, vanishing_witness};
use twisthom::homology::betti_twisted;

#[test]
#[ignore]
fn profile() {
    let g = GroupTable::from_invariant_factors(&[3, 3]).unwrap();
    let chi: Vec<u64> = (0..9u64).map(|x| x / 3).collect();
    let t0 = Instant::now();
    let complex = twisted_nerve_complex(&g, &chi, 3, 5).unwrap();
    eprintln!("build+validate: {:?}", t0.elapsed());
    let t1 = Instant::now();
    let b = betti_twisted(&complex).unwrap();
    eprintln!("betti: {:?} -> {:?}", t1.elapsed(), b.betti());
    let t2 = Instant::now();
    let w = vanishing_witness(&g, &chi, 3, 4).unwrap();
    eprintln!("witness total: {:?} betti {:?}", t2.elapsed(), w.betti);
}
