fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(slidecone::cli::dispatch(&args));
}
