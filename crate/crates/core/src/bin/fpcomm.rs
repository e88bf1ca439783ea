fn main() -> std::process::ExitCode {
    fpcomm::cli::main()
}
