use singosc4_core::model::{sector, list_euler_states, list_polar_states, SystemParams};
use singosc4_core::interbasis::{w_coeff_3f2, w_coeff_cg};
use singosc4_core::HalfInt;

fn main() {
    let p = SystemParams::default();
    let sec = sector(&p, HalfInt::from_int(0), HalfInt::from_int(0)).unwrap();
    println!("sector: {:?}", sec);
    let es = list_euler_states(2, &sec);
    let ps = list_polar_states(2, &sec);
    println!("euler: {:?}", es);
    println!("polar: {:?}", ps);
    for pq in &ps {
        for eq in &es {
            println!(
                "W[{},{}] 3f2={:?} cg={:?}",
                pq.n1,
                eq.j,
                w_coeff_3f2(pq, eq, &sec),
                w_coeff_cg(pq, eq, &sec)
            );
        }
    }
}
