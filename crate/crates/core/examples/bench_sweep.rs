use std::time::Instant;
use tetra::bialgebra::cyclic_group_algebra;
use tetra::field::Rationals;
use tetra::interchange::*;
use tetra::sample::sample_tetramodule;
use tetra::tensor::*;

fn main() {
    let q = Rationals;
    let b = cyclic_group_algebra(&q, 2);
    let objs: Vec<_> = (0..6).map(|i| sample_tetramodule(&b, 12 + i, 4)).collect();
    println!("dims: {:?}", objs.iter().map(|o| o.dim).collect::<Vec<_>>());
    let t0 = Instant::now();
    let _ = eta(&objs[0], &objs[1], &objs[2], &objs[3]).unwrap();
    println!("eta: {:?}", t0.elapsed());
    let t0 = Instant::now();
    let _ = check_unit_conditions(&objs[0], &objs[1]).unwrap();
    println!("unit_conditions: {:?}", t0.elapsed());
    let t0 = Instant::now();
    let ok = check_internal_assoc(&[&objs[0], &objs[1], &objs[2], &objs[3], &objs[4], &objs[5]]).unwrap();
    println!("internal_assoc({}): {:?}", ok, t0.elapsed());
    let t0 = Instant::now();
    let ok = check_external_assoc(&[&objs[0], &objs[1], &objs[2], &objs[3], &objs[4], &objs[5]]).unwrap();
    println!("external_assoc({}): {:?}", ok, t0.elapsed());
    let t0 = Instant::now();
    let w = otimes1(&objs[0], &objs[1]).unwrap();
    println!("otimes1 (dims {}x{} -> {}): {:?}", objs[0].dim, objs[1].dim, w.result.dim, t0.elapsed());
    let t0 = Instant::now();
    let _ = sample_tetramodule(&b, 777, 4);
    println!("sample: {:?}", t0.elapsed());
}
