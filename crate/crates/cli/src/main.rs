mod app;
mod ingest;
mod output;

fn main() {
    std::process::exit(app::main_with_args());
}
