// Package main runs a tiny HTTP server.
package main

import (
	"fmt"
	"net/http"
)

/*
Handler replies with a fixed body.
*/
func handler(w http.ResponseWriter, r *http.Request) {
	fmt.Fprintf(w, "hello // world") // write body
	raw := `/* raw string */`
	_ = raw
}

func main() {
	http.HandleFunc("/", handler)
	http.ListenAndServe(":8080", nil) // blocks
}
