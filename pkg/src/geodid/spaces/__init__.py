"""Space backends: Wasserstein, positive-orthant sphere, Frobenius matrices."""
