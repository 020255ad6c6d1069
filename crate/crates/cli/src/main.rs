use clap::Parser;

fn main() -> anyhow::Result<()> {
    swarmsec_cli::commands::execute(swarmsec_cli::commands::Cli::parse())
}
