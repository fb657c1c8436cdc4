/** Request sequencing: each navigation takes a ticket; responses render only
 * while their ticket is still the latest, so a slow fetch can never
 * overwrite the view of a later navigation.
 */

export class RequestGate {
  private current = 0;

  next(): number {
    this.current += 1;
    return this.current;
  }

  isCurrent(ticket: number): boolean {
    return ticket === this.current;
  }
}
