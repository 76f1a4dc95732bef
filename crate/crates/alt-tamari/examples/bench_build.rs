use alt_tamari::bits::{maximal_cliques, Bits};
use alt_tamari::lattice::FiniteLattice;
use alt_tamari::paths::{IncrementVector, NePath, Region};
use alt_tamari::trees::{right_rotations, AltTamariLattice};
use std::time::Instant;

fn main() {
    let nu = NePath::new(vec![3u32, 3, 3, 3, 3, 3]).unwrap();
    let dv = IncrementVector::new(vec![0u32, 0, 0, 0, 0], &nu).unwrap();
    let region = Region::new(&nu, &dv);

    let t = Instant::now();
    let points = region.points();
    let n_pts = points.len();
    let mut adj = vec![Bits::new(n_pts); n_pts];
    for i in 0..n_pts {
        for j in i + 1..n_pts {
            if !region.incompatible(points[i], points[j]) {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    println!("adjacency: {:?} ({} points)", t.elapsed(), n_pts);

    let t = Instant::now();
    let cliques = maximal_cliques(&adj, &Bits::full(n_pts), 1 << 22).unwrap();
    println!("cliques: {:?} ({})", t.elapsed(), cliques.len());

    let t = Instant::now();
    let alt = AltTamariLattice::build(&nu, &dv, 1 << 22).unwrap();
    println!("full build: {:?} (E={})", t.elapsed(), alt.len());

    let t = Instant::now();
    let mut total = 0usize;
    for tree in alt.trees() {
        total += right_rotations(tree).len();
    }
    println!("right_rotations sweep: {:?} ({} covers)", t.elapsed(), total);

    let t = Instant::now();
    let covers = alt.lattice().covers().to_vec();
    let lat = FiniteLattice::from_covers_structural(alt.len(), covers).unwrap();
    println!("from_covers_structural: {:?} (bottom {})", t.elapsed(), lat.bottom());

    let t = Instant::now();
    let cjc = alt.lattice().canonical_join_complex().unwrap();
    println!("canonical_join_complex: {:?} ({} ji)", t.elapsed(), cjc.ji.len());
}
