//! Ruling polynomials and transfer matrices of the shipped tangle corpus.

use cycount::cli::{default_corpus_dir, load_corpus};
use cycount::exact::LaurentPoly;
use cycount::tangle::{ruling_polynomial, ruling_transfer, sweep_transfer};

fn main() -> cycount::Result<()> {
    let corpus = load_corpus(&default_corpus_dir()).expect("shipped corpus");
    for (name, w) in &corpus {
        let transfer = ruling_transfer(w);
        assert_eq!(transfer, sweep_transfer(w)?, "letter-by-letter and direct enumeration agree");
        match ruling_polynomial(w) {
            Some(p) => println!("{name:<16} R(z) = {p}"),
            None => println!(
                "{name:<16} open, {}x{} transfer matrix, {} nonzero entries, {}",
                transfer.rows.len(),
                transfer.cols.len(),
                transfer.nnz(),
                transfer.to_json(&LaurentPoly::zero())
            ),
        }
    }
    Ok(())
}
