fn main() {
    println!("opforge");
}
