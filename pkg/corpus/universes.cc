-- A function between universes.
fun (A : Type 1) => fun (B : Type 0) => A
