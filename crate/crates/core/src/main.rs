fn main() {
    std::process::exit(toffoli_synth::cli::run(std::env::args_os()));
}
