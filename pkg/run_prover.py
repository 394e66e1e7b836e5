import sys

from ProverInterfaces.CommandLine import main

if __name__ == '__main__':
    sys.exit(main())
