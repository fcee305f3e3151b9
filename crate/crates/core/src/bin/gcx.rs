fn main() { println!("gcx"); }
