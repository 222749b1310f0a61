fn main() {
    let s = logtc::gtc::from_moment_complex(&logtc::plf::del_pezzo_complex()).unwrap();
    for d in &s.divisor_data {
        if d.stratum == "V4" {
            println!("component {} stratum {}", d.component, d.stratum);
            for e in &d.map {
                println!("  m = {:?} -> {:?}", e.m, e.divisor);
            }
        }
    }
    println!("functionals X1@V4: {:?}", s.mu_functionals("X1", "V4"));
}
