//! Drive the command-line layer from code: build a job, run it, render CSV.

use cherednik::cli::{render, run, Command, Format, JobConfig};

fn main() {
    let mut job = JobConfig::new(Command::Compare);
    job.group_spec = Some("Sn:3".into());
    job.tau_spec = Some("2,1".into());
    job.parameters = Some("-1:1:6".into());
    job.max_degree = 4;
    let env = run(&job).unwrap();
    println!("discrepancies: {}", env.summary["discrepancies"]);

    job.command = Command::Sweep;
    job.format = Format::Csv;
    print!("{}", render(&run(&job).unwrap()).unwrap());
    // the config itself is what `cherednik run --config` reads
    println!("{}", serde_json::to_string(&job).unwrap());
}
