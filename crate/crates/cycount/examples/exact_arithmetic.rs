//! Exact scalars: the field Q(√q, √(q-1)), Laurent polynomials in z, and ranks over F_q.

use cycount::exact::{laurent_eval_z, z_value, Field, FqMatrix, LaurentPoly, QuadExt};

fn main() -> cycount::Result<()> {
    for q in [2u64, 3, 5] {
        let z = z_value(q);
        // z = q^{1/2} - q^{-1/2}, so z^2 + 2 = q + 1/q
        let lhs = z.mul(&z).add(&QuadExt::from_int(q, 2));
        println!("q={q}: z = {z}, z^2 + 2 = {lhs}");

        let hopf = LaurentPoly::from_terms([(-2, 1), (0, 1)]);
        println!("       z^-2 + 1 = {}", laurent_eval_z(&hopf, q)?);
        println!("       sqrt(q-1) = {}", QuadExt::sqrt_q_minus_1(q));
    }

    let f = Field::new(3)?;
    let m = FqMatrix::from_rows(f, &[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]])?;
    println!("rank over F_3 of [[1,2,0],[2,1,0],[0,0,1]] = {}", m.rank());
    Ok(())
}
