//! Prints the with/without compression comparison for the catalog.

use dvpack::{catalog_instance, compare_compression};

fn main() {
    let inst = catalog_instance();
    let started = std::time::Instant::now();
    let cmp = compare_compression(&inst.items, &inst.bins);
    for line in cmp.summary_lines() {
        println!("{line}");
    }
    for row in &cmp.rows {
        println!(
            "{:<12} true volume on {:.2} / off {:.2}",
            row.bin.name, row.with_compression.true_volume, row.without_compression.true_volume
        );
    }
    println!("elapsed {:?}", started.elapsed());
}
