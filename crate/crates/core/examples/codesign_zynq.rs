// Best HW/SW split of the three KEM primitives on each Zynq-7000 part.

use bike_codesign::codesign::{render_report, report, standard_budgets, verify_fixture};
use bike_codesign::Fixture;

fn main() {
    let fixture = Fixture::zynq7000();
    let check = verify_fixture(&fixture);
    println!(
        "fixture: {} rows checked, consistent = {}",
        check.checked,
        check.is_consistent()
    );
    for f in &check.findings {
        println!("  {f}");
    }
    let rep = report(&fixture, &standard_budgets(&fixture)).unwrap();
    print!("{}", render_report(&rep));
}
