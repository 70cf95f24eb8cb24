//! Counting invariants of the unknot, the Hopf links and the trefoil, checked against the
//! brute-force census of global objects.

use cycount::aug::{global_object_oracle, link_invariant};
use cycount::tangle::parse_tangle;

fn main() -> cycount::Result<()> {
    let words = [
        ("unknot", "mod 0\nleft:\nL 1 -1\nR 1\n"),
        ("Hopf k=0", "mod 0\nleft:\nL 1 0\nL 3 -1\nX 2\nX 2\nR 3\nR 1\n"),
        ("Hopf k=1, mod 4", "mod 4\nleft:\nL 1 1\nL 3 -1\nX 2\nX 2\nR 3\nR 1\n"),
        ("trefoil", "mod 0\nleft:\nL 1 0\nL 3 -1\nX 2\nX 2\nX 2\nR 3\nR 1\n"),
    ];
    for (name, text) in words {
        let w = parse_tangle(text)?;
        for q in [2u64, 3] {
            let v = link_invariant(&w, q)?;
            let c = global_object_oracle(&w, q)?;
            let classes: Vec<String> =
                c.entries.iter().map(|e| format!("{}x(|Aut|={}, γ={})", e.multiplicity, e.aut, e.gamma)).collect();
            println!("{name:<16} q={q}: {v:<12} census {} = {}", classes.join(" + "), c.total);
        }
    }
    Ok(())
}
