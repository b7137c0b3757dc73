use std::time::Instant;
use twisthom::complexes::GroupTable;
use twisthom::linalg::CycEliminator;
use twisthom::theorems::twisted_nerve_complex;

#[test]
#[ignore]
fn orders() {
    let g = GroupTable::from_invariant_factors(&[9]).unwrap();
    let chi: Vec<u64> = (0..9u64).map(|x| x % 3).collect();
    let complex = twisted_nerve_complex(&g, &chi, 3, 5).unwrap();
    let m = complex.boundary(5).unwrap();
    let cap = 4096 - 455;
    // forward feed
    let t = Instant::now();
    let mut e = CycEliminator::new(3, m.nrows());
    let mut fed = 0;
    for j in 0..m.ncols() {
        e.insert_cyc_row(m.column(j)).unwrap();
        fed += 1;
        if e.rank() == cap { break; }
    }
    eprintln!("forward: rank {} fed {fed} in {:?} stats {:?}", e.rank(), t.elapsed(), e.stats);
    if true { return; }
    // reverse feed
    let t = Instant::now();
    let mut e = CycEliminator::new(3, m.nrows());
    let mut fed = 0;
    for j in (0..m.ncols()).rev() {
        e.insert_cyc_row(m.column(j)).unwrap();
        fed += 1;
        if e.rank() == cap { break; }
    }
    eprintln!("reverse: rank {} fed {fed} in {:?}", e.rank(), t.elapsed());
    // stride feed (coprime stride walks the columns evenly)
    let t = Instant::now();
    let mut e = CycEliminator::new(3, m.nrows());
    let n = m.ncols();
    let stride = 2654435761usize % n | 1;
    let mut fed = 0;
    let mut j = 0usize;
    for _ in 0..n {
        e.insert_cyc_row(m.column(j)).unwrap();
        fed += 1;
        if e.rank() == cap { break; }
        j = (j + stride) % n;
    }
    eprintln!("stride:  rank {} fed {fed} in {:?}", e.rank(), t.elapsed());
}
