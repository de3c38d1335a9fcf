from globalgates.cli import main

raise SystemExit(main())
