//! Drives the command-line interface in process, as the binary does.

fn main() {
    let corpus = cycount::cli::default_corpus_dir();
    let unknot = corpus.join("unknot.tng");
    let hopf = corpus.join("hopf_k0.tng");
    let runs: Vec<Vec<String>> = vec![
        vec!["rulings".into(), "--tangle".into(), unknot.display().to_string(), "--json".into()],
        vec!["augcount".into(), "--tangle".into(), hopf.display().to_string(), "--q".into(), "3".into(), "--json".into()],
        vec!["verify".into(), "--suite".into(), "heart".into(), "--json".into()],
    ];
    for args in runs {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = cycount::cli::run(std::iter::once("cycount".to_string()).chain(args.clone()), &mut out, &mut err);
        print!("$ cycount {}\n{}", args.join(" "), String::from_utf8_lossy(&out));
        eprint!("{}", String::from_utf8_lossy(&err));
        println!("exit {code}");
    }
}
