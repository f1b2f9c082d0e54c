//! Free and cyclic reduction, and canonical cyclic words.
use graphsc::{CyclicWord, Word};

fn main() {
    let w = Word::parse("a b a^-1 b a a^-1");
    println!("word            {w}");
    println!("free reduce     {}", w.free_reduce());
    println!("cyclic reduce   {}", w.cyclic_reduce());

    let r = Word::parse("c b b");
    let canon = CyclicWord::new(&r);
    println!("canonical of {r}: {canon}");
    for rot in canon.rotations() {
        assert_eq!(CyclicWord::new(&rot), canon);
    }
    println!(
        "period of (a b)^3: {}",
        Word::parse("a b a b a b").cyclic_period()
    );
}
