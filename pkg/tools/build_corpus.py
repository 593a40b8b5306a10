"""Regenerate the bundled proof corpus under src/intck/calculus/data."""

from intck.calculus.construct import write_corpus

if __name__ == "__main__":
    for path in write_corpus():
        print(path)
