from gmclab.cli import main

main()
