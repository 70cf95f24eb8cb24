//! The root category of nilpotent representations over F_q: products, the heart embedding
//! and the cone oracle.

use cycount::hall::{
    build_root_nilpotent, cone_oracle_sweep, extension_identity_gaps, heart_embedding_check, Basis, HallAlgebra,
    NilClass, Partition,
};

fn main() -> cycount::Result<()> {
    let q = 2;
    let model = build_root_nilpotent(q, 12)?;
    let alg = HallAlgebra::new(&model)?;
    let k0 = NilClass::stalk0(Partition::new(vec![1]));
    let k1 = NilClass::stalk1(Partition::new(vec![1]));

    println!("a_k a_k     = {}", alg.basis_product(Basis::A, &k0, &k0)?);
    println!("u_k u_k[1]  = {}", alg.basis_product(Basis::U, &k0, &k1)?);
    println!("u_k[1] u_k  = {}", alg.basis_product(Basis::U, &k1, &k0)?);

    let pairs = vec![(k0.clone(), k0.clone()), (NilClass::stalk0(Partition::new(vec![2])), k0.clone())];
    let rep = heart_embedding_check(&alg, &pairs, |z, x| model.classical_expansion(z, x))?;
    println!("heart embedding on {} pairs: passed {}", rep.cases, rep.passed());

    // the dimension identity of the cone only holds when the spectral sequence degenerates
    let z = NilClass::new(Partition::new(vec![]), Partition::new(vec![1, 1]));
    let x = NilClass::new(Partition::new(vec![2]), Partition::new(vec![1]));
    let worst = extension_identity_gaps(&alg, &z, &x)?.into_iter().max_by_key(|g| g.gap);
    if let Some(g) = worst {
        println!("largest gap for {z} by {x}: {} in degree {} at cone {}", g.gap, g.degree, g.cone);
    }

    let rep = cone_oracle_sweep(&model, &Partition::new(vec![1, 1]))?;
    println!("cone oracle on classes within (1,1): {} extensions, passed {}", rep.cases, rep.passed());
    Ok(())
}
