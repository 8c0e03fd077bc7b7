-- Length-indexed vectors; the index computes with add inside types.
axiom Vec : Nat -> Type 0;
axiom nil : Vec 0;
axiom cons : (n : Nat) -> Nat -> Vec n -> Vec (add n 1);
cons (add 0 1) 7 (cons 0 5 nil)
