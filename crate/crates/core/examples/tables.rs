//! Regenerates both summary tables and prints the diffs against the printed
//! cells together with the repair entries that account for them.

use nilext::tables::{build_table, TableNumber};

fn main() {
    print!("{}", build_table(TableNumber::One, 4..=5, 1..=1, 0).render());
    println!();
    print!("{}", build_table(TableNumber::Two, 4..=4, 1..=3, 0).render());
}
