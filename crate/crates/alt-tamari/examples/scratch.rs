use alt_tamari::boxcomplex::{box_complex, decomposing_vertices};
use alt_tamari::paths::{IncrementVector, NePath, Shape};
use alt_tamari::shelling::{dyck_facet_bijection, shelling, ShellingMode};
use alt_tamari::trees::AltTamariLattice;

fn main() {
    let (m, n) = (2u32, 4usize);
    let mut runs = vec![0u32];
    runs.extend(std::iter::repeat(m).take(n));
    let nu = NePath::new(runs).expect("runs");
    let dv = IncrementVector::zero(&nu);
    let alt = AltTamariLattice::build(&nu, &dv, 1 << 20).expect("build");
    let shape = Shape::from_region(alt.region());
    let bc = box_complex(&shape, 1 << 20).expect("bc");
    println!("heights = {:?}", shape.heights());
    for (i, b) in bc.boxes().iter().enumerate() {
        println!("box {i}: col {} row {}", b.col, b.row);
    }
    let d = decomposing_vertices(&shape);
    println!("pivots = {:?}", d.pivots);
    println!("labels = {:?}", d.labels);
    println!("hints  = {:?}", d.shedding_hints());
    let bij = dyck_facet_bijection(&nu, &dv, &bc, 1 << 20).expect("bij");
    for (p, f) in &bij.pairs {
        println!("H: path runs {:?} -> facet {:?}", p.path, f.to_vec());
    }
    let top = bc.shape().num_rows() as usize;
    for mode in [ShellingMode::Refined, ShellingMode::Plain] {
        let sh = shelling(&bc, mode, false).expect("shelling");
        println!("-- {mode} order:");
        for (j, f) in sh.facets.iter().enumerate() {
            let homology = sh.restrictions[j] == *f && !f.is_empty();
            println!(
                "  {j}: {:?} R={:?}{}",
                f.to_vec(),
                sh.restrictions[j].to_vec(),
                if homology && f.len() == top { "  <-- TOP HOMOLOGY" } else if homology { "  (homology)" } else { "" }
            );
        }
    }
}
