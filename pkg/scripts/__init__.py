# stable-index スクリプトモジュール
