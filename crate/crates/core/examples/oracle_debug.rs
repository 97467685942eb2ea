use fluctforce::friction::{friction_force, friction_oracle, FrictionScene};
use fluctforce::numerics::NumericsPolicy;
use fluctforce::response::PolarizabilityModel;

fn main() {
    let policy = NumericsPolicy::default();
    let scene =
        FrictionScene::new(1e-4, 0.5, PolarizabilityModel::isotropic(1.0, 1.0, 0.3)).unwrap();
    let closed = friction_force(&scene, &policy).unwrap();
    println!(
        "closed: F = {:?}, err = {:.3e}, evals = {}, converged = {}",
        closed.force, closed.error_estimate, closed.evaluations, closed.converged
    );
    let oracle = friction_oracle(&scene, &policy).unwrap();
    println!(
        "oracle: F = {:?}, evals = {}, converged = {}",
        oracle.force, oracle.evaluations, oracle.converged
    );
    let rel = (closed.force[2] - oracle.force[2]).abs() / closed.force[2].abs();
    println!("rel diff = {rel:.3e}");
}
