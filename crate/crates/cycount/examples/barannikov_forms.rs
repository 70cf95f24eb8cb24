//! Rulings of graded point sets, their Barannikov normal forms, and the exhaustive check
//! that every rank-one flagged complex is isomorphic to exactly one normal form.

use cycount::complex::{
    aut_order, barannikov_census, barannikov_form, classify_to_ruling, enumerate_set_rulings, ext_profile,
    GradedPointSet,
};
use cycount::exact::Field;

fn main() -> cycount::Result<()> {
    let field = Field::new(2)?;
    let set = GradedPointSet::new(0, vec![1, 0, 1, 0]);
    for rho in enumerate_set_rulings(&set) {
        let x = barannikov_form(field, &rho, &set)?;
        let p = ext_profile(&x, &x)?;
        println!(
            "ruling {rho}: classifies to {}, |Aut| = {}, Ext dims {:?}",
            classify_to_ruling(&x, 0)?,
            aut_order(&x)?,
            p.dims
        );
    }

    for q in [2, 3] {
        let c = barannikov_census(Field::new(q)?, &set)?;
        println!(
            "q={q}: {} strict objects fall into {} of {} ruling classes (passed: {})",
            c.objects,
            c.classes,
            c.rulings,
            c.passed()
        );
    }
    Ok(())
}
