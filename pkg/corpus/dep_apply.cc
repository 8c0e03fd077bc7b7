-- Applying a dependent axiom; the result type computes.
axiom P : Nat -> Type 0;
axiom p : (n : Nat) -> P n;
p (add 1 2)
