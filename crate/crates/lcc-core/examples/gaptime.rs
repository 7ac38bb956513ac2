use lcc_core::{bounds, rat};
fn main() {
    let t = std::time::Instant::now();
    let r0 = bounds::rho0();
    let v0 = bounds::gap_scan(&rat(1, 2), &r0.hi, 60);
    println!("gap0: {} violations, {:?}", v0.len(), t.elapsed());
    let t = std::time::Instant::now();
    let r1 = bounds::rho1();
    let v1 = bounds::gap_scan(&rat(3, 4), &r1.hi, 60);
    println!("gap1: {} violations, {:?}", v1.len(), t.elapsed());
}
