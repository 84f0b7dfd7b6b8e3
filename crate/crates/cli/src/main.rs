//! Command-line driver. Subcommands land here as the library grows.

fn main() {
    println!("shiftlab");
}
