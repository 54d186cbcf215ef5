//! Drives the command-line front end in-process.

fn main() {
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    let code = series_forge::cli::run(
        ["series-forge", "--format", "plain", "expand", "arcsinh-pow-over-sqrt", "--m", "2", "--order", "10", "--verify"],
        &mut out,
        &mut err,
    );
    println!("exit code {code}");
}
