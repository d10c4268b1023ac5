"""
A Lisp whose every value is a hypervector
=========================================

Programs are read into s-expressions, encoded as vectors, and evaluated
entirely in vector form.  Cons cells and closures live in an associative
cleanup memory as role-filler chunks behind random pointer symbols;
integers ride the carry-free residue code, so arithmetic wraps at 105.
"""

from phasorlisp import Session

s = Session()

program = """
(+ 2 3)
(car (cons 1 nil))
(cons 1 (cons 2 (cons 3 nil)))
((lambda (x) (* x x)) 6)
(define length
  (lambda (l)
    (cond ((eq? l nil) 0)
          (t (+ 1 (length (cdr l)))))))
(length (quote (a b c d e)))
(define fact
  (lambda (n)
    (cond ((eq? n 0) 1)
          (t (* n (fact (- n 1)))))))
(fact 4)
(fact 5)
"""

for line in s.eval_source(program):
    print(line)

# note: (fact 5) = 120 wraps to 15 because the integer range is 105

# every cons cell and closure above became a chunk in cleanup memory
print("memory:", s.memory.stats())
