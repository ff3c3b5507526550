//! A point census over `1 <= B <= N`, written as JSONL plus a CSV summary,
//! along with the auxiliary counts.
//!
//!     cargo run --release --example census -- 2 10000 1000000 /tmp/census

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::time::Instant;

use cubic_twist::census::{
    count_large_cubefull, count_m_integers, reducible_census, write_jsonl, write_summary_csv, CensusConfig,
};

fn main() -> cubic_twist::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let k: i64 = args.first().and_then(|s| s.parse().ok()).unwrap_or(2);
    let n: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(1000);
    let x_bound: i128 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(100_000);
    let dir = args.get(3).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);

    let start = Instant::now();
    let mut summaries = Vec::new();
    let mut step = n.min(10);
    loop {
        let report = CensusConfig::new(k, step, x_bound).run()?;
        let s = report.summary();
        println!(
            "N = {:>8}: {:>7} curves with points, {:>8} points, {:>8} on cube-free B  ({:.2?})",
            s.n, s.curve_count, s.point_sum, s.point_sum_cubefree, start.elapsed()
        );
        summaries.push(s);
        if step == n {
            let path = dir.join(format!("census_k{k}_N{n}.jsonl"));
            write_jsonl(&report, BufWriter::new(File::create(&path)?))?;
            println!("records written to {}", path.display());
            break;
        }
        step = (step * 10).min(n);
    }
    let csv = dir.join(format!("census_k{k}_summary.csv"));
    write_summary_csv(&summaries, File::create(&csv)?)?;
    println!("summary written to {}", csv.display());

    let cap = n.min(u32::MAX as u64) as u32;
    for big_k in [8, 27, 64] {
        println!("B <= {n} with cube-full part >= {big_k}: {}", count_large_cubefull(cap, big_k));
    }
    println!("B <= {n} equal to their m-part: {}", count_m_integers(k, cap));
    if cubic_twist::arith::is_squarefree(k) {
        let triples = reducible_census(k, n.min(1000))?;
        println!("reducible forms x(x^2 + 3bxy + 3cy^2) with B <= {}: {}", n.min(1000), triples.len());
    }
    Ok(())
}
