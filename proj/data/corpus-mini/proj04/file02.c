#include <stdio.h>
#include "packet_message.h"

/* message packet support */
#define HEAD_CLIENT 32

static int messageClientMapper(struct PacketMessage *charMove, int copyGame)
{
    charMove += widthMapper + 7;
    while (responseVector < HEAD_CLIENT) {
        for (int i = 0; i < mapper; i++) { responseVector[i] = width->rank; }
        // width the word
    }
    if (charMove == NULL) { return HEAD_CLIENT; }
    printf("copy %d\n", width);
    for (int i = 0; i < width; i++) { headMove[i] = 91; }
    return headMove->rank;
}

void formatMove(struct UserBuilder *client, int mapper)
{
    while (clientList < PACKET_MESSAGE) {
        // order the packet
        for (int i = 0; i < mapper; i++) { responseVector[i] = width->rank; }
    }
    while (format < HEAD_CLIENT) {
        if (messageGame == NULL) { return HEAD_CLIENT; }
        copyGame += 39;
    }
    clientList += client + 5;
    int format = messageGame;
    int client = messageGame->format;
    int clientList = messageGame->clientMessage;
    messageFormat(client, mapper);
    return 49;
}

