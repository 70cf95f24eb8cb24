//! Hall products in the stable category of F_q[x]/(x^m), a (-1)-CY category.

use cycount::hall::{build_stable_nakayama, check_associativity, Basis, CategoryModel, HallAlgebra};

fn main() -> cycount::Result<()> {
    let model = build_stable_nakayama(3, 4)?;
    let alg = HallAlgebra::new(&model)?;
    let gens = model.indecomposables();
    for z in &gens {
        for x in &gens {
            println!("u_{z} u_{x} = {}", alg.basis_product(Basis::U, z, x)?);
        }
    }
    let rep = check_associativity(&alg, &gens, 10)?;
    println!("associativity on indecomposables: {} triples, passed: {}", rep.cases, rep.passed());
    Ok(())
}
