//! Checks the chain bab⁻¹ = bca²c⁻¹b⁻¹ = cba²b⁻¹c⁻¹ = cac⁻¹ in the group
//! with relators b⁻¹ab = a², c⁻¹ac = a², bc = cb.

use trigroup::diagram::{derivation_chain_check, Direction, FreeWord, Step};

fn w(s: &str) -> FreeWord {
    s.parse().expect("word")
}

fn main() {
    let relators = vec![(w("b^-1ab"), w("a^2")), (w("c^-1ac"), w("a^2")), (w("bc"), w("cb"))];
    let chain = [w("bab^-1"), w("bca^2c^-1b^-1"), w("cba^2b^-1c^-1"), w("cac^-1")];
    let links = vec![
        vec![Step::new(1, 1, Direction::Forward)],
        vec![
            Step::new(0, 2, Direction::Forward),
            Step::new(4, 2, Direction::Backward),
        ],
        vec![Step::new(1, 0, Direction::Backward)],
    ];
    match derivation_chain_check(&relators, &chain, &links) {
        Ok(()) => {
            let text: Vec<String> = chain.iter().map(|c| c.to_string()).collect();
            println!("{}", text.join(" = "));
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    }
}
