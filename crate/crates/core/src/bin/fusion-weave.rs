fn main() -> std::process::ExitCode {
    weaving_fusion::cli::main()
}
